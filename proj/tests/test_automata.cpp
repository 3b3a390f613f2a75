#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "subtess/automaton_json.hpp"
#include "subtess/dfa.hpp"
#include "subtess/word.hpp"

using namespace subtess;

namespace {

const Alphabet AB = Alphabet::letters("ab");

Dfa re(const std::string& pattern, const Alphabet& a = AB) {
    return determinize_minimize(compile_regex(pattern, a));
}

std::set<Word> words_upto(const Dfa& d, std::size_t n) {
    auto v = enumerate_upto(d, n);
    return {v.begin(), v.end()};
}

std::vector<Word> all_words(const Alphabet& a, std::size_t n) {
    std::vector<Word> out{{}};
    std::size_t start = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = start; i < end; ++i)
            for (Sym s = 0; s < a.size(); ++s) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        start = end;
    }
    std::sort(out.begin(), out.end(), shorter_lex_less);
    return out;
}

Word w(const std::string& s) { return parse_word(AB, s); }

}  // namespace

TEST_CASE("compile_regex basics") {
    Dfa d = re("(ab)*");
    CHECK(d.accepts(w("")));
    CHECK(d.accepts(w("ab")));
    CHECK(d.accepts(w("abab")));
    CHECK_FALSE(d.accepts(w("a")));
    CHECK_FALSE(d.accepts(w("ba")));

    CHECK(is_empty(re("∅")));
    CHECK(words_upto(re("ε"), 3) == std::set<Word>{w("")});

    // "a|ba" accepts exactly {a, ba}, verified by enumeration
    CHECK(words_upto(re("a|ba"), 3) == std::set<Word>{w("a"), w("ba")});

    CHECK_THROWS_AS(re("(ab"), ParseError);
    CHECK_THROWS_AS(re("ac"), Error);
    CHECK(re("a+") == re("aa*"));
}

TEST_CASE("boolean operations") {
    CHECK(complement(dfa_all(AB)) == dfa_none(AB));
    CHECK(words_upto(intersect(re("(ab)*"), re("a*b*")), 6) ==
          std::set<Word>{w(""), w("ab")});
    Dfa l = re("(a|b)*a");
    CHECK(is_empty(difference(l, l)));
    CHECK_THROWS_AS(intersect(re("a*"), re("c*", Alphabet::letters("c"))),
                    AlphabetMismatch);
}

TEST_CASE("determinize_minimize canonical form") {
    // idempotence on "a|a"
    Dfa d = re("a|a");
    CHECK(d == re("a"));
    CHECK(d.states() == 3);  // start, accept, sink

    // (a|b)*a needs exactly 2 states (total, no sink needed)
    CHECK(re("(a|b)*a").states() == 2);

    // language-preserving and canonical: equal languages are equal values
    Dfa x = re("(a|b)*abb(a|b)*");
    Dfa y = unite(intersect(x, re("a(a|b)*")), intersect(x, re("b(a|b)*|ε")));
    CHECK(x == y);
}

TEST_CASE("classify") {
    CHECK(classify(dfa_none(AB)).kind == Classification::Empty);
    auto c = classify(dfa_from_words(AB, {w(""), w("ba")}));
    REQUIRE(c.kind == Classification::Finite);
    CHECK(c.words == std::vector<Word>{w(""), w("ba")});
    CHECK(classify(re("(ab)*")).kind == Classification::Infinite);
}

TEST_CASE("enumerate_upto") {
    CHECK(enumerate_upto(re("(ab)*"), 4) ==
          std::vector<Word>{w(""), w("ab"), w("abab")});
    CHECK(enumerate_upto(dfa_all(AB), 1) == std::vector<Word>{w(""), w("a"), w("b")});
    // subword-closure language restricted to length 2
    CHECK(enumerate_upto(upward_closure_word(w("ab"), AB), 2) ==
          std::vector<Word>{w("ab")});
}

TEST_CASE("inverse_homomorphism") {
    Alphabet xy = Alphabet::letters("xy");
    // h(x)=ab, h(y)=ba against (ab)*
    Dfa inv = inverse_homomorphism(re("(ab)*"), xy, {w("ab"), w("ba")});
    for (const Word& u : enumerate_upto(inv, 4)) {
        Word img;
        for (Sym s : u) {
            Word part = (s == 0) ? w("ab") : w("ba");
            img.insert(img.end(), part.begin(), part.end());
        }
        CHECK(re("(ab)*").accepts(img));
    }
    CHECK(inv.accepts(parse_word(xy, "x")));
    CHECK(inv.accepts(parse_word(xy, "xx")));
    CHECK_FALSE(inv.accepts(parse_word(xy, "y")));

    // erasing map: h(z)=ε against a language containing ε accepts z*
    Alphabet z = Alphabet::letters("z");
    CHECK(inverse_homomorphism(re("(ab)*"), z, {Word{}}) == dfa_all(z));

    // identity map preserves the language
    CHECK(inverse_homomorphism(re("a*b"), AB, {w("a"), w("b")}) == re("a*b"));
}

TEST_CASE("upward closure of a word") {
    CHECK(upward_closure_word(w(""), AB) == dfa_all(AB));
    Dfa up = upward_closure_word(w("ab"), AB);
    CHECK(up.accepts(w("baba")));
    CHECK_FALSE(up.accepts(w("bb")));
}

TEST_CASE("subword, cover, incomparability on the worked examples") {
    CHECK(is_subword(w("aa"), w("babbba")));
    CHECK(is_cover(w("aa"), w("aba")));
    CHECK(is_incomparable(w("aba"), w("aabb")));
    CHECK_FALSE(is_cover(w("aa"), w("babbba")));
    CHECK_FALSE(is_incomparable(w("aa"), w("aa")));
}

TEST_CASE("boolean ops agree with set-level ops on enumerations") {
    Alphabet abc = Alphabet::letters("abc");
    std::vector<Dfa> langs = {
        re("(ab)*", abc), re("a*b*c*", abc), re("(a|b|c)*ac", abc),
        re("∅", abc), re("c(ab)+", abc)};
    const std::size_t N = 8;
    for (const Dfa& A : langs)
        for (const Dfa& B : langs) {
            auto ea = words_upto(A, N), eb = words_upto(B, N);
            std::set<Word> u, i, d;
            std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(),
                           std::inserter(u, u.end()));
            std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                  std::inserter(i, i.end()));
            std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                std::inserter(d, d.end()));
            CHECK(words_upto(unite(A, B), N) == u);
            CHECK(words_upto(intersect(A, B), N) == i);
            CHECK(words_upto(difference(A, B), N) == d);
        }
    // complement against the full enumeration
    auto all = all_words(abc, 5);
    for (const Dfa& A : langs) {
        auto ca = words_upto(complement(A), 5);
        auto ea = words_upto(A, 5);
        for (const Word& x : all)
            CHECK(ca.count(x) + ea.count(x) == 1);
    }
}

TEST_CASE("determinize_minimize is idempotent and language-preserving") {
    for (const char* p : {"(ab)*", "a*b*", "(a|b)*a", "b+a+"}) {
        Nfa n = compile_regex(p, AB);
        Dfa d1 = determinize_minimize(n);
        // feeding the DFA back through an NFA view must be a fixpoint
        Nfa view{d1.alphabet()};
        view.states = d1.states();
        view.initial = {0};
        for (std::uint32_t q = 0; q < d1.states(); ++q) {
            if (d1.accepting(q)) view.accepting.insert(q);
            for (Sym s = 0; s < AB.size(); ++s)
                view.transitions.insert({q, s, d1.next(q, s)});
        }
        CHECK(determinize_minimize(view) == d1);
        // language preserved vs. direct NFA simulation on all short words
        for (const Word& x : all_words(AB, 8)) {
            std::set<std::uint32_t> cur = n.initial;
            for (Sym s : x) {
                std::set<std::uint32_t> nxt;
                for (auto [p2, s2, q2] : n.transitions)
                    if (s2 == s && cur.count(p2)) nxt.insert(q2);
                cur = nxt;
            }
            bool acc = false;
            for (auto q : cur)
                if (n.accepting.count(q)) acc = true;
            CHECK(acc == d1.accepts(x));
        }
    }
}

TEST_CASE("is_subword is a partial order") {
    auto words = all_words(AB, 5);
    for (const Word& x : words) CHECK(is_subword(x, x));
    for (const Word& x : words)
        for (const Word& y : words)
            if (is_subword(x, y) && is_subword(y, x)) CHECK(x == y);
    auto small = all_words(AB, 4);
    for (const Word& x : small)
        for (const Word& y : small)
            for (const Word& z : small)
                if (is_subword(x, y) && is_subword(y, z)) CHECK(is_subword(x, z));
}

TEST_CASE("upward_closure_word matches is_subword") {
    for (const char* ws : {"", "a", "ab", "bab"}) {
        Word v = w(ws);
        Dfa up = upward_closure_word(v, AB);
        for (const Word& x : all_words(AB, v.size() + 3))
            CHECK(up.accepts(x) == is_subword(v, x));
    }
}

TEST_CASE("automaton json round trip") {
    Dfa d = re("(ab|ba)*");
    std::string j = automaton_to_json(d);
    CHECK(determinize_minimize(automaton_from_json(j)) == d);
    // deterministic serialization
    CHECK(automaton_to_json(d) == j);
    CHECK(j.find("\"alphabet\"") != std::string::npos);
    CHECK(j.find("\"transitions\"") != std::string::npos);
}

TEST_CASE("least_word") {
    CHECK(least_word(re("(ab)*")) == Word{});
    CHECK(least_word(re("b+|ab")) == w("b"));
    CHECK_FALSE(least_word(dfa_none(AB)).has_value());
}
