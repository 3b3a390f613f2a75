#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "subtess/nfa.hpp"
#include "subtess/word.hpp"

namespace subtess {

/// Deterministic, total automaton in canonical form: minimized, states
/// numbered by BFS from the initial state (symbols explored in alphabet
/// order). Equal languages over equal alphabets yield structurally equal
/// values, so language equality is operator==. Immutable after
/// construction.
class Dfa {
public:
    /// Canonicalizes an explicit transition table. `delta[q * |Σ| + a]`
    /// must be total; the initial state is `initial`.
    Dfa(Alphabet alphabet, std::uint32_t states, std::vector<std::uint32_t> delta,
        std::uint32_t initial, std::vector<bool> accepting);

    const Alphabet& alphabet() const { return alphabet_; }
    std::uint32_t states() const { return states_; }
    std::uint32_t initial() const { return 0; }
    std::uint32_t next(std::uint32_t q, Sym a) const {
        return delta_[q * alphabet_.size() + a];
    }
    bool accepting(std::uint32_t q) const { return accepting_[q]; }
    const std::vector<std::uint32_t>& delta() const { return delta_; }

    bool accepts(const Word& w) const;
    std::uint32_t run(std::uint32_t q, const Word& w) const;

    bool operator==(const Dfa& o) const;
    bool operator!=(const Dfa& o) const { return !(*this == o); }
    std::size_t hash() const;

private:
    Alphabet alphabet_;
    std::uint32_t states_;
    std::vector<std::uint32_t> delta_;
    std::vector<bool> accepting_;
};

struct DfaHash {
    std::size_t operator()(const Dfa& d) const { return d.hash(); }
};

enum class BoolOp { Union, Intersection, Complement, Difference };

Dfa determinize_minimize(const Nfa& a);
Dfa boolean(BoolOp op, const Dfa& a, const Dfa* b = nullptr);
Dfa complement(const Dfa& a);
Dfa intersect(const Dfa& a, const Dfa& b);
Dfa unite(const Dfa& a, const Dfa& b);
Dfa difference(const Dfa& a, const Dfa& b);

Dfa dfa_none(const Alphabet& a);
Dfa dfa_all(const Alphabet& a);
Dfa dfa_word(const Alphabet& a, const Word& w);
Dfa dfa_from_words(const Alphabet& a, const std::set<Word>& words);

bool is_empty(const Dfa& a);
bool is_subset(const Dfa& a, const Dfa& b);

struct Classification {
    enum Kind { Empty, Finite, Infinite } kind;
    std::vector<Word> words;  // filled for Finite, length-then-lex sorted
};

/// Decides emptiness/finiteness via reachable-coreachable cycle detection;
/// for finite languages returns the full word list.
Classification classify(const Dfa& a);

/// Accepted words of length <= n, length-then-lex sorted.
std::vector<Word> enumerate_upto(const Dfa& a, std::size_t n);

/// {u in Γ* : h(u) in L(A)} where h maps each Γ-letter to a word over A's
/// alphabet. Each Γ-letter transition is replaced by A's run on its image.
Dfa inverse_homomorphism(const Dfa& a, const Alphabet& gamma,
                         const std::vector<Word>& h);

/// DFA for w↑ = Σ* a₁ Σ* a₂ … Σ* a_m Σ*.
Dfa upward_closure_word(const Word& w, const Alphabet& sigma);

/// Length-then-lex least accepted word, if any.
std::optional<Word> least_word(const Dfa& a);

/// Least word taking `from` to an accepting state (same order), if any.
std::optional<Word> least_word_from(const Dfa& a, std::uint32_t from);

}  // namespace subtess
