#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "subtess/dfa.hpp"

namespace subtess {

struct PNode;
using PFormula = std::shared_ptr<const PNode>;

/// FO+MOD formula over (ℕ,+): linear atoms Σaᵢxᵢ ⋈ c (⋈ in {=, <=}),
/// modular atoms Σaᵢxᵢ ≡ r (mod m), Boolean connectives, ∃, and the
/// counting quantifiers ∃^{>=k} and ∃^{p mod q}. Apply instantiates a
/// shared subformula under a renaming of its free variables, so repeated
/// instantiations evaluate the shared body once.
struct PNode {
    enum Kind { True, False, Linear, ModAtom, Not, And, Or, Exists, Count, Apply };
    Kind kind;

    // Linear / ModAtom
    std::map<std::string, std::int64_t> coeffs;
    bool is_eq = false;        // Linear: = vs <=
    std::int64_t rhs = 0;      // Linear
    std::int64_t residue = 0;  // ModAtom
    std::int64_t modulus = 1;  // ModAtom

    std::vector<PFormula> kids;  // Not/And/Or

    // Exists / Count
    std::string var;
    bool count_is_mod = false;
    unsigned count_k = 0;  // threshold
    unsigned count_p = 0, count_q = 0;

    // Apply
    PFormula body;
    std::map<std::string, std::string> rename;
};

PFormula pf_true();
PFormula pf_false();
PFormula pf_linear(std::map<std::string, std::int64_t> coeffs, bool is_eq,
                   std::int64_t rhs);
PFormula pf_mod(std::map<std::string, std::int64_t> coeffs, std::int64_t residue,
                std::int64_t modulus);
PFormula pf_not(PFormula a);
PFormula pf_and(std::vector<PFormula> kids);
PFormula pf_or(std::vector<PFormula> kids);
PFormula pf_exists(std::string var, PFormula body);
PFormula pf_exists_block(const std::vector<std::string>& vars, PFormula body);
PFormula pf_count_at_least(unsigned k, std::string var, PFormula body);
PFormula pf_count_mod(unsigned p, unsigned q, std::string var, PFormula body);
PFormula pf_apply(PFormula body, std::map<std::string, std::string> rename);

std::vector<std::string> pf_free_vars(const PFormula& f);

/// Renames free variables (used by the threshold expansion).
PFormula pf_rename_free(const PFormula& f,
                        const std::map<std::string, std::string>& rename);

/// Replaces every ∃^{>=k} with the k-fold existential expansion with
/// pairwise distinctness. Modulo quantifiers are untouched.
PFormula pf_lower_thresholds(const PFormula& f);

/// Multi-track LSBF bit automaton for a solution set. PAD form: membership
/// depends only on the encoded tuple (closed under appending and removing
/// all-zero columns). CAN form: no word ends in an all-zero column, so
/// words and tuples are in bijection.
struct SolutionAutomaton {
    enum Form { PAD, CAN };
    std::vector<std::string> vars;  // sorted; track i = bit of vars[i]
    Dfa dfa;
    Form form = PAD;
};

/// Alphabet of bit columns for n tracks: 2^n labels; label character i is
/// the bit of track i, symbol index has track i at bit i.
Alphabet bit_alphabet(std::size_t tracks);

/// Classic carry/residue-state construction; result is PAD over exactly the
/// given vars (which must contain the atom's variables).
SolutionAutomaton atom_automaton(const PFormula& atom,
                                 const std::vector<std::string>& vars);

/// Extends the track set (new tracks unconstrained).
SolutionAutomaton cylindrify(const SolutionAutomaton& a,
                             const std::vector<std::string>& vars);

SolutionAutomaton solution_and(const SolutionAutomaton& a, const SolutionAutomaton& b);
SolutionAutomaton solution_or(const SolutionAutomaton& a, const SolutionAutomaton& b);
SolutionAutomaton solution_not(const SolutionAutomaton& a);

/// Projects out one track and re-saturates the PAD form.
SolutionAutomaton solution_exists(const SolutionAutomaton& a, const std::string& var);

SolutionAutomaton to_canonical(const SolutionAutomaton& a);
SolutionAutomaton to_padded(const SolutionAutomaton& a);

struct CountMode {
    bool is_mod = false;
    unsigned k = 0;        // at-least threshold
    unsigned p = 0, q = 1; // residue class
    static CountMode at_least(unsigned k) { return {false, k, 0, 1}; }
    static CountMode mod(unsigned p, unsigned q) { return {true, 0, p, q}; }
};

/// {x̄ : |{y : (x̄,y) solves A}| satisfies the mode}, over vars minus y.
SolutionAutomaton count_exists(const SolutionAutomaton& a, const std::string& var,
                               CountMode mode);

bool decide_sentence(const PFormula& sentence);

/// All solution tuples with every component <= bound (test support).
std::vector<std::vector<std::uint64_t>> solutions_upto(const SolutionAutomaton& a,
                                                       std::uint64_t bound);

/// Membership of one tuple (components in vars order).
bool solution_contains(const SolutionAutomaton& a,
                       const std::vector<std::uint64_t>& tuple);

/// Evaluates a formula to a solution automaton over exactly its free
/// variables. Conjunction blocks under ∃ chains are solved with greedy
/// variable elimination to keep track counts small; shared Apply bodies are
/// evaluated once.
class PresburgerEngine {
public:
    SolutionAutomaton eval(const PFormula& f);

private:
    SolutionAutomaton eval_uncached(const PFormula& f);
    SolutionAutomaton eval_exists_block(const PFormula& f);
    // keyed by owner so cached nodes stay alive (heap addresses recycle)
    std::map<PFormula, SolutionAutomaton, std::owner_less<PFormula>> cache_;
};

}  // namespace subtess
