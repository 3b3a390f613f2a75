#pragma once

#include <optional>
#include <unordered_map>

#include "subtess/nivat.hpp"
#include "subtess/weighted.hpp"

namespace subtess {

/// Quantifier mode shared by the two-variable logic.
struct QuantMode {
    enum Kind { Exists, AtLeast, Mod } kind = Exists;
    unsigned k = 0;        // AtLeast
    unsigned p = 0, q = 1; // Mod
    static QuantMode exists() { return {Exists, 0, 0, 1}; }
    static QuantMode at_least(unsigned k) { return {AtLeast, k, 0, 1}; }
    static QuantMode mod(unsigned p, unsigned q) { return {Mod, 0, p, q}; }
};

/// Term of the two-variable logic: one of the variables x, y or a word
/// constant.
struct CTerm {
    bool is_const = false;
    int var = 0;  // 0 = x, 1 = y
    Word w;
    static CTerm x() { return {false, 0, {}}; }
    static CTerm y() { return {false, 1, {}}; }
    static CTerm var_index(int v) { return {false, v, {}}; }
    static CTerm constant(Word w) { return {true, 0, std::move(w)}; }
};

struct CNode;
using CFormula = std::shared_ptr<const CNode>;

/// Two-variable counting logic over words: atoms s ⊑ t, s ⊏· t, s = t,
/// s ∈ K; Boolean connectives; counting quantifiers binding x or y.
struct CNode {
    enum Kind { True, False, Sub, Cov, Eq, InLang, Not, And, Or, Quant } kind;
    CTerm s, t;               // Sub/Cov/Eq; InLang uses s
    std::optional<Dfa> lang;  // InLang
    std::vector<CFormula> kids;
    int qvar = 0;             // Quant
    QuantMode mode;           // Quant
};

CFormula cf_true();
CFormula cf_false();
CFormula cf_sub(CTerm s, CTerm t);
CFormula cf_cov(CTerm s, CTerm t);
CFormula cf_eq(CTerm s, CTerm t);
CFormula cf_in(CTerm s, Dfa lang);
CFormula cf_not(CFormula a);
CFormula cf_and(std::vector<CFormula> kids);
CFormula cf_or(std::vector<CFormula> kids);
CFormula cf_quant(int var, QuantMode mode, CFormula body);

/// Variables with free occurrences (subset of {0,1}).
std::set<int> cf_free_vars(const CFormula& f);

/// Rewrites every atom into one of the six shapes x∈K, y∈K, x⊑y, y⊑x,
/// x⊏·y, y⊏·x (constants folded into finite regular predicates, trivial
/// self-comparisons into ⊤/⊥).
CFormula normalize_atoms(const CFormula& f, const Alphabet& sigma);

/// Quantifier elimination for the two-variable counting logic over
/// (Σ*, ⊑, ⊏·, regular predicates). Owns the relation presentations and
/// memoizes counting automata.
class Cmod2Engine {
public:
    explicit Cmod2Engine(const Alphabet& sigma);

    const Alphabet& sigma() const { return sigma_; }

    /// {other : Q qvar φ} for quantifier-free normalized φ.
    Dfa qe_counting(const CFormula& phi, int qvar, QuantMode mode);

    /// {x : φ(x)} for a formula with free variables ⊆ {x}.
    Dfa define_language(const CFormula& f);

    /// Truth over (L, ⊑, ⊏·, (K∩L), constants from L); quantifiers are
    /// relativized to L.
    bool decide(const CFormula& sentence, const Dfa& l);

    /// Statistics for verdict traces.
    std::size_t counting_automata_built() const { return built_; }

private:
    CFormula eliminate(const CFormula& f);
    Dfa counted(int theta, const Dfa& range, bool is_mod, unsigned kp, unsigned q);

    std::uint32_t lang_id(const Dfa& l);

    Alphabet sigma_;
    SubwordRelations rel_;
    NivatPresentation inc_;
    std::vector<NivatPresentation> relations_;  // by theta index 2..6
    std::unordered_map<Dfa, std::uint32_t, DfaHash> lang_ids_;
    std::map<std::tuple<int, std::uint32_t, bool, unsigned, unsigned>, Dfa> cache_;
    std::size_t built_ = 0;
};

/// Convenience wrapper constructing a fresh engine.
bool decide_cmod2(const CFormula& sentence, const Dfa& l);

}  // namespace subtess
