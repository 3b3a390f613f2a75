#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "subtess/presburger.hpp"

using namespace subtess;

namespace {

using Env = std::map<std::string, std::uint64_t>;

// finite-domain reference evaluation; quantifiers range over {0..bound}
bool ref_eval(const PFormula& f, Env& env, std::uint64_t bound) {
    switch (f->kind) {
        case PNode::True:
            return true;
        case PNode::False:
            return false;
        case PNode::Linear: {
            std::int64_t s = 0;
            for (auto& [v, c] : f->coeffs) s += c * static_cast<std::int64_t>(env.at(v));
            return f->is_eq ? s == f->rhs : s <= f->rhs;
        }
        case PNode::ModAtom: {
            std::int64_t s = 0;
            for (auto& [v, c] : f->coeffs) s += c * static_cast<std::int64_t>(env.at(v));
            std::int64_t m = ((s % f->modulus) + f->modulus) % f->modulus;
            return m == f->residue;
        }
        case PNode::Not:
            return !ref_eval(f->kids[0], env, bound);
        case PNode::And:
            for (auto& k : f->kids)
                if (!ref_eval(k, env, bound)) return false;
            return true;
        case PNode::Or:
            for (auto& k : f->kids)
                if (ref_eval(k, env, bound)) return true;
            return false;
        case PNode::Exists: {
            for (std::uint64_t v = 0; v <= bound; ++v) {
                env[f->var] = v;
                if (ref_eval(f->kids[0], env, bound)) {
                    env.erase(f->var);
                    return true;
                }
            }
            env.erase(f->var);
            return false;
        }
        case PNode::Count: {
            std::uint64_t count = 0;
            for (std::uint64_t v = 0; v <= bound; ++v) {
                env[f->var] = v;
                if (ref_eval(f->kids[0], env, bound)) ++count;
            }
            env.erase(f->var);
            return f->count_is_mod ? count % f->count_q == f->count_p
                                   : count >= f->count_k;
        }
        case PNode::Apply: {
            Env inner;
            for (auto& v : pf_free_vars(f->body)) {
                auto it = f->rename.find(v);
                inner[v] = env.at(it == f->rename.end() ? v : it->second);
            }
            return ref_eval(f->body, inner, bound);
        }
    }
    return false;
}

PFormula leq(const std::string& v, std::int64_t c) {
    return pf_linear({{v, 1}}, false, c);
}
PFormula eq(const std::string& v, std::int64_t c) {
    return pf_linear({{v, 1}}, true, c);
}

std::set<std::vector<std::uint64_t>> solset(const SolutionAutomaton& a,
                                            std::uint64_t bound) {
    auto v = solutions_upto(a, bound);
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("atom automata match brute force") {
    PresburgerEngine e;
    CHECK(solset(e.eval(eq("x", 3)), 7) ==
          std::set<std::vector<std::uint64_t>>{{3}});

    auto sum2 = e.eval(pf_linear({{"x", 1}, {"y", 1}}, true, 2));
    CHECK(solset(sum2, 4) ==
          std::set<std::vector<std::uint64_t>>{{0, 2}, {1, 1}, {2, 0}});

    auto odd = e.eval(pf_and({pf_mod({{"x", 1}}, 1, 2), leq("x", 5)}));
    CHECK(solset(odd, 8) == std::set<std::vector<std::uint64_t>>{{1}, {3}, {5}});

    // negative coefficients: x <= y
    auto le = e.eval(pf_linear({{"x", 1}, {"y", -1}}, false, 0));
    for (std::uint64_t x = 0; x <= 6; ++x)
        for (std::uint64_t y = 0; y <= 6; ++y)
            CHECK(solution_contains(le, {x, y}) == (x <= y));
}

TEST_CASE("boolean and cylindrification") {
    PresburgerEngine e;
    auto a = e.eval(leq("x", 4));
    CHECK(is_empty(solution_and(a, solution_not(a)).dfa));
    CHECK(solset(e.eval(pf_and({leq("x", 2), pf_not(leq("x", 0))})), 5) ==
          std::set<std::vector<std::uint64_t>>{{1}, {2}});
    // cylindrify x<=1 to {x,y}, count pairs with y<=1
    auto both = solution_and(e.eval(leq("x", 1)), e.eval(leq("y", 1)));
    CHECK(solset(both, 3).size() == 4);
}

TEST_CASE("exists") {
    PresburgerEngine e;
    auto a = e.eval(pf_exists("y", pf_linear({{"x", 1}, {"y", 1}}, true, 2)));
    CHECK(solset(a, 5) == std::set<std::vector<std::uint64_t>>{{0}, {1}, {2}});

    // ∃y (y = y) over remaining var x: everything
    auto triv = e.eval(pf_exists("y", pf_and({pf_linear({{"y", 1}, {"y", -1}}, true, 0),
                                              leq("x", 100)})));
    CHECK(solset(triv, 3).size() == 4);

    auto c = e.eval(pf_exists("y", pf_and({pf_linear({{"x", 1}, {"y", -1}}, true, 0),
                                           leq("x", 1)})));
    CHECK(solset(c, 4) == std::set<std::vector<std::uint64_t>>{{0}, {1}});
}

TEST_CASE("canonical and padded forms") {
    PresburgerEngine e;
    auto a = e.eval(eq("x", 2));
    auto can = to_canonical(a);
    // exactly one canonical word "01" (LSBF)
    auto words = enumerate_upto(can.dfa, 6);
    REQUIRE(words.size() == 1);
    CHECK(words[0] == Word{0, 1});
    // zero tuple is the empty word
    auto z = to_canonical(e.eval(eq("x", 0)));
    CHECK(enumerate_upto(z.dfa, 4) == std::vector<Word>{{}});
    // roundtrip
    CHECK(to_padded(can).dfa == a.dfa);

    // CAN-form bijectivity: #accepted words for x <= B is B+1
    for (std::uint64_t b = 0; b <= 12; ++b) {
        auto cb = to_canonical(e.eval(leq("x", static_cast<std::int64_t>(b))));
        CHECK(enumerate_upto(cb.dfa, 8).size() == b + 1);
    }
}

TEST_CASE("count_exists examples") {
    CHECK(decide_sentence(pf_count_at_least(3, "y", leq("y", 2))));
    CHECK_FALSE(decide_sentence(pf_count_at_least(4, "y", leq("y", 2))));
    CHECK(decide_sentence(pf_count_mod(
        1, 2, "y", pf_and({leq("y", 4), pf_mod({{"y", 1}}, 0, 2)}))));
    CHECK_FALSE(decide_sentence(pf_count_at_least(
        1, "y", pf_linear({{"y", 1}}, true, -1))));
    // infinitely many witnesses: thresholds hold, residues never
    CHECK(decide_sentence(pf_count_at_least(7, "y", pf_true())));
    CHECK_FALSE(decide_sentence(pf_count_mod(0, 2, "y", pf_true())));
}

TEST_CASE("unbounded counts fail every residue class") {
    // {x : |{y : y >= x}| ≡ 0 mod 2} is empty
    PresburgerEngine e;
    auto body = pf_linear({{"x", 1}, {"y", -1}}, false, 0);  // x <= y
    auto a = e.eval(pf_count_mod(0, 2, "y", body));
    CHECK(a.vars == std::vector<std::string>{"x"});
    CHECK(is_empty(a.dfa));
}

TEST_CASE("decide_sentence basics") {
    CHECK(decide_sentence(pf_exists("x", pf_linear({{"x", 1}}, true, 0))));
    CHECK(decide_sentence(pf_exists("x", pf_true())));
    CHECK(decide_sentence(pf_count_mod(0, 2, "x", leq("x", 3))));
    CHECK_FALSE(decide_sentence(pf_count_mod(0, 2, "x", leq("x", 2))));
}

TEST_CASE("apply instantiates a shared template") {
    // template: f <= s (two formals), applied at (x,y) and (y,x)
    auto tmpl = pf_linear({{"f", 1}, {"s", -1}}, false, 0);
    PresburgerEngine e;
    auto xy = e.eval(pf_apply(tmpl, {{"f", "x"}, {"s", "y"}}));
    auto yx = e.eval(pf_apply(tmpl, {{"f", "y"}, {"s", "x"}}));
    for (std::uint64_t x = 0; x <= 5; ++x)
        for (std::uint64_t y = 0; y <= 5; ++y) {
            CHECK(solution_contains(xy, {x, y}) == (x <= y));
            CHECK(solution_contains(yx, {x, y}) == (y <= x));
        }
}

TEST_CASE("random bounded sentences agree with finite-domain evaluation") {
    std::mt19937 rng(20240817);
    auto rnd = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    const std::vector<std::string> pool = {"x", "y", "z"};

    std::function<PFormula(std::vector<std::string>, int)> gen_qf =
        [&](std::vector<std::string> scope, int depth) -> PFormula {
        if (depth == 0 || rnd(0, 2) == 0) {
            // random atom over the scope
            std::map<std::string, std::int64_t> coeffs;
            for (auto& v : scope)
                if (rnd(0, 1)) coeffs[v] = rnd(-3, 3);
            if (coeffs.empty() && !scope.empty()) coeffs[scope[0]] = 1;
            if (rnd(0, 3) == 0) return pf_mod(coeffs, rnd(0, 3), rnd(1, 4));
            return pf_linear(coeffs, rnd(0, 1) == 0, rnd(-5, 12));
        }
        switch (rnd(0, 2)) {
            case 0:
                return pf_not(gen_qf(scope, depth - 1));
            case 1:
                return pf_and({gen_qf(scope, depth - 1), gen_qf(scope, depth - 1)});
            default:
                return pf_or({gen_qf(scope, depth - 1), gen_qf(scope, depth - 1)});
        }
    };

    const std::uint64_t B = 12;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int nvars = rnd(1, 3);
        std::vector<std::string> scope(pool.begin(), pool.begin() + nvars);
        // innermost body, always bounded per quantifier below
        PFormula body = gen_qf(scope, 2);
        PFormula f = body;
        for (int i = nvars - 1; i >= 0; --i) {
            PFormula bounded =
                pf_and({leq(scope[i], static_cast<std::int64_t>(B)), f});
            switch (rnd(0, 2)) {
                case 0:
                    f = pf_exists(scope[i], bounded);
                    break;
                case 1:
                    f = pf_count_at_least(static_cast<unsigned>(rnd(0, 4)), scope[i],
                                          bounded);
                    break;
                default: {
                    unsigned q = static_cast<unsigned>(rnd(1, 4));
                    f = pf_count_mod(static_cast<unsigned>(rnd(0, q - 1)), q,
                                     scope[i], bounded);
                }
            }
        }
        Env env;
        bool expected = ref_eval(f, env, B);
        CHECK(decide_sentence(f) == expected);
        // threshold lowering agrees
        CHECK(decide_sentence(pf_lower_thresholds(f)) == expected);
        ++checked;
    }
    CHECK(checked == 60);
}
