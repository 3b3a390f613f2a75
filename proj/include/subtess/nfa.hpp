#pragma once

#include <set>
#include <tuple>

#include "subtess/alphabet.hpp"

namespace subtess {

/// Nondeterministic finite automaton without epsilon transitions.
/// Constructions expand homomorphism images inline instead.
struct Nfa {
    Alphabet alphabet;
    std::uint32_t states = 0;
    std::set<std::tuple<std::uint32_t, Sym, std::uint32_t>> transitions;
    std::set<std::uint32_t> initial;
    std::set<std::uint32_t> accepting;

    bool accepts_epsilon() const;
};

Nfa nfa_none(const Alphabet& a);     // empty language
Nfa nfa_epsilon(const Alphabet& a);  // {ε}
Nfa nfa_symbol(const Alphabet& a, Sym s);
Nfa nfa_word(const Alphabet& a, const Word& w);
Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_star(const Nfa& a);
Nfa nfa_plus(const Nfa& a);

/// NFA whose language is exactly the given word set.
Nfa nfa_from_words(const Alphabet& a, const std::set<Word>& words);

/// Compiles a regex over the alphabet's labels. Supported syntax:
/// literals, ε, ∅, concatenation, |, *, +, parentheses. Multi-byte labels
/// are matched longest-first.
Nfa compile_regex(std::string_view pattern, const Alphabet& a);

}  // namespace subtess
