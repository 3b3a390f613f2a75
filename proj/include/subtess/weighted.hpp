#pragma once

#include <optional>
#include <set>

#include "subtess/nivat.hpp"
#include "subtess/semiring.hpp"

namespace subtess {

/// Weighted automaton (λ, μ, ν): eval(w) = λ·μ(w)·ν.
struct WeightedAutomaton {
    Semiring ring;
    Alphabet alphabet;
    std::size_t dim;
    Mat lambda;           // 1 × dim
    std::vector<Mat> mu;  // per symbol, dim × dim
    Mat nu;               // dim × 1
};

/// eval(w) = 1 if w in L(A), else 0, over ℕ∞.
WeightedAutomaton char_function(const Dfa& a);

SemiringValue eval(const WeightedAutomaton& w, const Word& word);

/// Pushforward along a letter-to-letter-or-ε map f:
/// eval'(u) = Σ_{f(w)=u} eval(w). ℕ∞ only.
WeightedAutomaton push_non_expanding(const WeightedAutomaton& w,
                                     const std::vector<std::optional<Sym>>& f,
                                     const Alphabet& target);

/// Pushforward along a letter-to-nonempty-word map, by expanding each
/// transition into a chain that reads the image and carries the weight on
/// its last step.
WeightedAutomaton push_non_erasing(const WeightedAutomaton& w,
                                   const std::vector<Word>& f,
                                   const Alphabet& target);

/// Arbitrary homomorphism, split into a non-expanding erasure followed by a
/// non-erasing expansion.
WeightedAutomaton push_homomorphism(const WeightedAutomaton& w,
                                    const std::vector<Word>& f,
                                    const Alphabet& target);

/// eval(u) = |{v in L : (u,v) in R}| over ℕ∞. R must be unambiguous.
WeightedAutomaton counting_function(const NivatPresentation& r, const Dfa& l);

/// Entrywise image under the semiring homomorphism into S_k^∞ or Z_q^∞.
WeightedAutomaton map_semiring(const WeightedAutomaton& w, Semiring target);

/// {u : eval(u) in target} for a finite-semiring automaton, by forward
/// determinization of the reachable row vectors λ·μ(u).
Dfa preimage_regular(const WeightedAutomaton& w,
                     const std::set<SemiringValue>& target);

/// {u : |{v in L : (u,v) in R}| >= k}.
Dfa count_at_least(const NivatPresentation& r, const Dfa& l, unsigned k);

/// {u : |{v in L : (u,v) in R}| in p + qN}. An infinite count never
/// satisfies the condition.
Dfa count_mod(const NivatPresentation& r, const Dfa& l, unsigned p, unsigned q);

/// Debug dump (semiring tag, lambda, mu per symbol, nu; "inf" for ∞).
std::string weighted_to_json(const WeightedAutomaton& w);

}  // namespace subtess
