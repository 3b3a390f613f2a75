#include "subtess/nivat.hpp"

#include <algorithm>
#include <functional>

namespace subtess {

void NivatPresentation::validate() const {
    if (h1.size() != gamma.size() || h2.size() != gamma.size())
        throw Error("nivat: maps must cover every gamma letter");
    for (std::size_t g = 0; g < gamma.size(); ++g)
        if (h1[g].empty() && h2[g].empty())
            throw Error("nivat: letter with empty image on both tracks: " +
                        gamma.label(g));
    if (s.alphabet() != gamma) throw AlphabetMismatch("nivat: S not over gamma");
}

namespace {

// Two-track alphabet Σ×{1,2}: labels a#1 ... then a#2 ..., with the maps
// proj1, proj2.
struct Tracks {
    Alphabet gamma;
    std::vector<Word> h1, h2;
    std::size_t n;  // |sigma|

    explicit Tracks(const Alphabet& sigma) : gamma(make(sigma)), n(sigma.size()) {
        for (std::size_t a = 0; a < n; ++a) {
            h1.push_back({static_cast<Sym>(a)});
            h2.push_back({});
        }
        for (std::size_t a = 0; a < n; ++a) {
            h1.push_back({});
            h2.push_back({static_cast<Sym>(a)});
        }
    }
    Sym t1(std::size_t a) const { return static_cast<Sym>(a); }
    Sym t2(std::size_t a) const { return static_cast<Sym>(n + a); }

    static Alphabet make(const Alphabet& sigma) {
        std::vector<std::string> labels;
        for (const auto& l : sigma.labels()) labels.push_back(l + "#1");
        for (const auto& l : sigma.labels()) labels.push_back(l + "#2");
        return Alphabet(std::move(labels));
    }
};

Nfa letters(const Alphabet& g, const std::vector<Sym>& syms) {
    Nfa n = nfa_none(g);
    for (Sym s : syms) n = nfa_union(n, nfa_symbol(g, s));
    return n;
}

// Sub = ( ⋃_a (Σ₂∖{a#2})* a#2 a#1 )* Σ₂* : every track-1 letter is
// immediately preceded by its track-2 twin, so proj1(w) ⊑ proj2(w), and the
// standard factorization of the right word makes the witness unique per
// pair.
Nfa sub_language(const Tracks& t) {
    Nfa blocks = nfa_none(t.gamma);
    for (std::size_t a = 0; a < t.n; ++a) {
        std::vector<Sym> other2;
        for (std::size_t b = 0; b < t.n; ++b)
            if (b != a) other2.push_back(t.t2(b));
        Nfa block = nfa_concat(nfa_star(letters(t.gamma, other2)),
                               nfa_word(t.gamma, {t.t2(a), t.t1(a)}));
        blocks = nfa_union(blocks, block);
    }
    std::vector<Sym> all2;
    for (std::size_t a = 0; a < t.n; ++a) all2.push_back(t.t2(a));
    return nfa_concat(nfa_star(blocks), nfa_star(letters(t.gamma, all2)));
}

Nfa any2(const Tracks& t) {
    std::vector<Sym> s;
    for (std::size_t a = 0; a < t.n; ++a) s.push_back(t.t2(a));
    return letters(t.gamma, s);
}
Nfa any1(const Tracks& t) {
    std::vector<Sym> s;
    for (std::size_t a = 0; a < t.n; ++a) s.push_back(t.t1(a));
    return letters(t.gamma, s);
}

}  // namespace

SubwordRelations subword_relations(const Alphabet& sigma) {
    Tracks t(sigma);
    Dfa sub = determinize_minimize(sub_language(t));

    // exactly one surplus track-2 letter: (Σ₂Σ₁)* Σ₂ (Σ₂Σ₁)*
    Nfa pair21 = nfa_concat(any2(t), any1(t));
    Nfa one = nfa_concat(nfa_concat(nfa_star(pair21), any2(t)), nfa_star(pair21));

    // at least two surplus letters: D* Σ₂ D* Σ₂ D* with D = Σ₂Σ₁ | Σ₂
    Nfa d = nfa_union(pair21, any2(t));
    Nfa two = nfa_concat(
        nfa_concat(nfa_concat(nfa_star(d), any2(t)),
                   nfa_concat(nfa_star(d), any2(t))),
        nfa_star(d));

    SubwordRelations out{
        {sigma, t.gamma, sub, t.h1, t.h2},
        {sigma, t.gamma, intersect(sub, determinize_minimize(one)), t.h1, t.h2},
        {sigma, t.gamma, intersect(sub, determinize_minimize(two)), t.h1, t.h2}};
    out.subword.validate();
    out.cover.validate();
    out.proper_minus_cover.validate();
    return out;
}

NivatPresentation inc_equal_length(const Alphabet& sigma) {
    Tracks t(sigma);
    // (Σ₂Σ₁)* {a#2 b#1 : a≠b} (Σ₂Σ₁)*: strictly alternating pairs with at
    // least one mismatch
    Nfa pair = nfa_concat(any2(t), any1(t));
    Nfa mism = nfa_none(t.gamma);
    for (std::size_t a = 0; a < t.n; ++a)
        for (std::size_t b = 0; b < t.n; ++b)
            if (a != b)
                mism = nfa_union(mism, nfa_word(t.gamma, {t.t2(a), t.t1(b)}));
    Nfa inc2 = nfa_concat(nfa_concat(nfa_star(pair), mism), nfa_star(pair));
    NivatPresentation r{sigma, t.gamma, determinize_minimize(inc2), t.h1, t.h2};
    r.validate();
    return r;
}

namespace {

// Witnesses for pairs with |u| <= |v| and u not a subword of v: the right
// word provides the first l-1 letters of u in the greedy factorization but
// fails on the l-th, and the leftovers pair up letter by letter.
Dfa inc_short_or_equal(const Tracks& t) {
    Nfa blocks = nfa_none(t.gamma);
    Nfa fail = nfa_none(t.gamma);
    for (std::size_t a = 0; a < t.n; ++a) {
        std::vector<Sym> other2;
        for (std::size_t b = 0; b < t.n; ++b)
            if (b != a) other2.push_back(t.t2(b));
        Nfa others = letters(t.gamma, other2);
        blocks = nfa_union(blocks, nfa_concat(nfa_star(others),
                                              nfa_word(t.gamma, {t.t2(a), t.t1(a)})));
        fail = nfa_union(fail, nfa_concat(nfa_plus(others),
                                          nfa_symbol(t.gamma, t.t1(a))));
    }
    Nfa tail = nfa_star(nfa_concat(any2(t), any1(t)));
    return determinize_minimize(nfa_concat(nfa_concat(nfa_star(blocks), fail), tail));
}

}  // namespace

NivatPresentation inc_shorter_left(const Alphabet& sigma) {
    Tracks t(sigma);
    Dfa both = inc_short_or_equal(t);
    NivatPresentation eq = inc_equal_length(sigma);
    NivatPresentation r{sigma, t.gamma, difference(both, eq.s), t.h1, t.h2};
    r.validate();
    return r;
}

NivatPresentation incomparability(const Alphabet& sigma) {
    NivatPresentation r1 = inc_shorter_left(sigma);
    return disjoint_union(disjoint_union(r1, inc_equal_length(sigma)), inverse(r1));
}

NivatPresentation inverse(const NivatPresentation& r) {
    NivatPresentation out = r;
    std::swap(out.h1, out.h2);
    return out;
}

NivatPresentation disjoint_union(const NivatPresentation& r1,
                                 const NivatPresentation& r2) {
    if (r1.sigma != r2.sigma)
        throw AlphabetMismatch("disjoint_union: target alphabet mismatch");
    std::vector<std::string> labels;
    for (const auto& l : r1.gamma.labels()) labels.push_back(l + "#L");
    for (const auto& l : r2.gamma.labels()) labels.push_back(l + "#R");
    Alphabet gamma(std::move(labels));
    Sym off = static_cast<Sym>(r1.gamma.size());

    Nfa u{gamma};
    u.states = r1.s.states() + r2.s.states();
    std::uint32_t soff = r1.s.states();
    u.initial = {0, soff};
    for (std::uint32_t q = 0; q < r1.s.states(); ++q) {
        if (r1.s.accepting(q)) u.accepting.insert(q);
        for (Sym a = 0; a < r1.gamma.size(); ++a)
            u.transitions.insert({q, a, r1.s.next(q, a)});
    }
    for (std::uint32_t q = 0; q < r2.s.states(); ++q) {
        if (r2.s.accepting(q)) u.accepting.insert(q + soff);
        for (Sym a = 0; a < r2.gamma.size(); ++a)
            u.transitions.insert({q + soff, a + off, r2.s.next(q, a) + soff});
    }

    std::vector<Word> h1 = r1.h1, h2 = r1.h2;
    h1.insert(h1.end(), r2.h1.begin(), r2.h1.end());
    h2.insert(h2.end(), r2.h2.begin(), r2.h2.end());
    NivatPresentation out{r1.sigma, gamma, determinize_minimize(u), std::move(h1),
                          std::move(h2)};
    out.validate();
    return out;
}

NivatPresentation restrict_range(const NivatPresentation& r, const Dfa& l) {
    if (l.alphabet() != r.sigma)
        throw AlphabetMismatch("restrict_range: L not over sigma");
    NivatPresentation out = r;
    out.s = intersect(r.s, inverse_homomorphism(l, r.gamma, r.h2));
    return out;
}

std::uint64_t contains(const NivatPresentation& r, const Word& u, const Word& v) {
    r.validate();
    std::size_t nu = u.size() + 1, nv = v.size() + 1;
    std::size_t states = r.s.states();
    // ways[q][i][j]: witness words from state q that still have to produce
    // u[i:] on track 1 and v[j:] on track 2. Every gamma letter advances
    // i+j, so the recursion is over a DAG.
    std::vector<std::uint64_t> ways(states * nu * nv, UINT64_MAX);
    auto idx = [&](std::uint32_t q, std::size_t i, std::size_t j) {
        return (q * nu + i) * nv + j;
    };
    std::function<std::uint64_t(std::uint32_t, std::size_t, std::size_t)> go =
        [&](std::uint32_t q, std::size_t i, std::size_t j) -> std::uint64_t {
        std::uint64_t& memo = ways[idx(q, i, j)];
        if (memo != UINT64_MAX) return memo;
        std::uint64_t total =
            (i == u.size() && j == v.size() && r.s.accepting(q)) ? 1 : 0;
        for (Sym g = 0; g < r.gamma.size(); ++g) {
            const Word& a = r.h1[g];
            const Word& b = r.h2[g];
            if (a.empty() && b.empty()) continue;
            if (i + a.size() > u.size() || j + b.size() > v.size()) continue;
            if (!std::equal(a.begin(), a.end(), u.begin() + i)) continue;
            if (!std::equal(b.begin(), b.end(), v.begin() + j)) continue;
            total += go(r.s.next(q, g), i + a.size(), j + b.size());
        }
        memo = total;
        return total;
    };
    return go(0, 0, 0);
}

UnambiguityReport check_unambiguous_upto(const NivatPresentation& r, std::size_t n) {
    std::vector<Word> words = enumerate_upto(dfa_all(r.sigma), n);
    for (const Word& u : words)
        for (const Word& v : words) {
            std::uint64_t c = contains(r, u, v);
            if (c > 1) return {false, u, v, c};
        }
    return {};
}

}  // namespace subtess
