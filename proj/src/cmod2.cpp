#include "subtess/cmod2.hpp"

#include <algorithm>
#include <functional>

#include "subtess/word.hpp"

namespace subtess {

namespace {

CFormula mk(CNode n) { return std::make_shared<const CNode>(std::move(n)); }

CFormula atom2(CNode::Kind k, CTerm s, CTerm t) {
    CNode n;
    n.kind = k;
    n.s = std::move(s);
    n.t = std::move(t);
    return mk(std::move(n));
}

}  // namespace

CFormula cf_true() {
    CNode n;
    n.kind = CNode::True;
    return mk(std::move(n));
}
CFormula cf_false() {
    CNode n;
    n.kind = CNode::False;
    return mk(std::move(n));
}
CFormula cf_sub(CTerm s, CTerm t) { return atom2(CNode::Sub, std::move(s), std::move(t)); }
CFormula cf_cov(CTerm s, CTerm t) { return atom2(CNode::Cov, std::move(s), std::move(t)); }
CFormula cf_eq(CTerm s, CTerm t) { return atom2(CNode::Eq, std::move(s), std::move(t)); }

CFormula cf_in(CTerm s, Dfa lang) {
    CNode n;
    n.kind = CNode::InLang;
    n.s = std::move(s);
    n.lang = std::move(lang);
    return mk(std::move(n));
}

CFormula cf_not(CFormula a) {
    CNode n;
    n.kind = CNode::Not;
    n.kids = {std::move(a)};
    return mk(std::move(n));
}

CFormula cf_and(std::vector<CFormula> kids) {
    if (kids.empty()) return cf_true();
    if (kids.size() == 1) return kids[0];
    CNode n;
    n.kind = CNode::And;
    n.kids = std::move(kids);
    return mk(std::move(n));
}

CFormula cf_or(std::vector<CFormula> kids) {
    if (kids.empty()) return cf_false();
    if (kids.size() == 1) return kids[0];
    CNode n;
    n.kind = CNode::Or;
    n.kids = std::move(kids);
    return mk(std::move(n));
}

CFormula cf_quant(int var, QuantMode mode, CFormula body) {
    if (var != 0 && var != 1) throw Error("cf_quant: variable must be x or y");
    CNode n;
    n.kind = CNode::Quant;
    n.qvar = var;
    n.mode = mode;
    n.kids = {std::move(body)};
    return mk(std::move(n));
}

std::set<int> cf_free_vars(const CFormula& f) {
    std::set<int> out;
    std::function<void(const CFormula&)> go = [&](const CFormula& g) {
        switch (g->kind) {
            case CNode::True:
            case CNode::False:
                return;
            case CNode::Sub:
            case CNode::Cov:
            case CNode::Eq:
                if (!g->s.is_const) out.insert(g->s.var);
                if (!g->t.is_const) out.insert(g->t.var);
                return;
            case CNode::InLang:
                if (!g->s.is_const) out.insert(g->s.var);
                return;
            case CNode::Not:
            case CNode::And:
            case CNode::Or:
                for (auto& k : g->kids) go(k);
                return;
            case CNode::Quant: {
                std::set<int> inner = cf_free_vars(g->kids[0]);
                inner.erase(g->qvar);
                out.insert(inner.begin(), inner.end());
                return;
            }
        }
    };
    go(f);
    return out;
}

namespace {

// {w : c ⊏· w} = all single-letter insertions into c.
std::set<Word> covers_of(const Word& c, const Alphabet& sigma) {
    std::set<Word> out;
    for (std::size_t i = 0; i <= c.size(); ++i)
        for (Sym a = 0; a < sigma.size(); ++a) {
            Word w = c;
            w.insert(w.begin() + static_cast<std::ptrdiff_t>(i), a);
            out.insert(std::move(w));
        }
    return out;
}

std::set<Word> covered_by(const Word& c) {
    std::set<Word> out;
    for (const Word& u : subwords_of(c))
        if (u.size() + 1 == c.size()) out.insert(u);
    return out;
}

}  // namespace

CFormula normalize_atoms(const CFormula& f, const Alphabet& sigma) {
    auto tf = [](bool b) { return b ? cf_true() : cf_false(); };
    switch (f->kind) {
        case CNode::True:
        case CNode::False:
            return f;
        case CNode::Sub: {
            const CTerm& s = f->s;
            const CTerm& t = f->t;
            if (s.is_const && t.is_const) return tf(is_subword(s.w, t.w));
            if (s.is_const) return cf_in(t, upward_closure_word(s.w, sigma));
            if (t.is_const) return cf_in(s, dfa_from_words(sigma, subwords_of(t.w)));
            if (s.var == t.var) return cf_true();
            return f;
        }
        case CNode::Cov: {
            const CTerm& s = f->s;
            const CTerm& t = f->t;
            if (s.is_const && t.is_const) return tf(is_cover(s.w, t.w));
            if (s.is_const) return cf_in(t, dfa_from_words(sigma, covers_of(s.w, sigma)));
            if (t.is_const) return cf_in(s, dfa_from_words(sigma, covered_by(t.w)));
            if (s.var == t.var) return cf_false();
            return f;
        }
        case CNode::Eq: {
            const CTerm& s = f->s;
            const CTerm& t = f->t;
            if (s.is_const && t.is_const) return tf(s.w == t.w);
            if (s.is_const) return cf_in(t, dfa_from_words(sigma, {s.w}));
            if (t.is_const) return cf_in(s, dfa_from_words(sigma, {t.w}));
            if (s.var == t.var) return cf_true();
            return cf_and({cf_sub(s, t), cf_sub(t, s)});
        }
        case CNode::InLang: {
            if (f->lang->alphabet() != sigma)
                throw AlphabetMismatch("normalize_atoms: predicate over wrong alphabet");
            if (f->s.is_const) return tf(f->lang->accepts(f->s.w));
            return f;
        }
        case CNode::Not:
            return cf_not(normalize_atoms(f->kids[0], sigma));
        case CNode::And:
        case CNode::Or: {
            std::vector<CFormula> kids;
            for (auto& k : f->kids) kids.push_back(normalize_atoms(k, sigma));
            CNode n;
            n.kind = f->kind;
            n.kids = std::move(kids);
            return mk(std::move(n));
        }
        case CNode::Quant:
            return cf_quant(f->qvar, f->mode, normalize_atoms(f->kids[0], sigma));
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------

Cmod2Engine::Cmod2Engine(const Alphabet& sigma)
    : sigma_(sigma), rel_(subword_relations(sigma)), inc_(incomparability(sigma)) {
    relations_ = {rel_.cover, rel_.proper_minus_cover, inverse(rel_.cover),
                  inverse(rel_.proper_minus_cover), inc_};  // theta 2..6
}

std::uint32_t Cmod2Engine::lang_id(const Dfa& l) {
    auto [it, fresh] =
        lang_ids_.emplace(l, static_cast<std::uint32_t>(lang_ids_.size()));
    return it->second;
}

Dfa Cmod2Engine::counted(int theta, const Dfa& range, bool is_mod, unsigned kp,
                         unsigned q) {
    auto key = std::make_tuple(theta, lang_id(range), is_mod, kp, q);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Dfa out = dfa_none(sigma_);
    if (theta == 1) {
        if (!is_mod) {
            // count is [x ∈ range]
            out = kp == 0 ? dfa_all(sigma_) : kp == 1 ? range : dfa_none(sigma_);
        } else {
            out = dfa_none(sigma_);
            if (1 % q == kp) out = range;
            if (0 == kp) out = unite(out, complement(range));
        }
    } else {
        const NivatPresentation& r = relations_[static_cast<std::size_t>(theta - 2)];
        out = is_mod ? count_mod(r, range, kp, q) : count_at_least(r, range, kp);
        ++built_;
    }
    cache_.emplace(key, out);
    return out;
}

namespace {

struct AtomTable {
    // distinct predicate atoms per variable, by canonical DFA
    std::vector<Dfa> x_atoms, y_atoms;
    bool has_rel[4] = {false, false, false, false};  // Sub(x,y),Sub(y,x),Cov(x,y),Cov(y,x)

    std::size_t intern(std::vector<Dfa>& v, const Dfa& d) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == d) return i;
        v.push_back(d);
        return v.size() - 1;
    }
};

// relation index: 0 Sub(x,y), 1 Sub(y,x), 2 Cov(x,y), 3 Cov(y,x)
int rel_index(const CNode& n) {
    bool fwd = n.s.var == 0;
    if (n.kind == CNode::Sub) return fwd ? 0 : 1;
    return fwd ? 2 : 3;
}

// truth of the four relation shapes under theta_i (i in 1..6)
bool rel_truth(int theta, int rel) {
    switch (rel) {
        case 0:  // x ⊑ y
            return theta == 1 || theta == 2 || theta == 3;
        case 1:  // y ⊑ x
            return theta == 1 || theta == 4 || theta == 5;
        case 2:  // x ⊏· y
            return theta == 2;
        default:  // y ⊏· x
            return theta == 4;
    }
}

void collect_atoms(const CFormula& f, AtomTable& t) {
    switch (f->kind) {
        case CNode::True:
        case CNode::False:
            return;
        case CNode::Sub:
        case CNode::Cov:
            t.has_rel[rel_index(*f)] = true;
            return;
        case CNode::Eq:
            throw Error("qe_counting: formula not normalized (= atom)");
        case CNode::InLang:
            t.intern(f->s.var == 0 ? t.x_atoms : t.y_atoms, *f->lang);
            return;
        case CNode::Not:
        case CNode::And:
        case CNode::Or:
            for (auto& k : f->kids) collect_atoms(k, t);
            return;
        case CNode::Quant:
            throw Error("qe_counting: formula must be quantifier-free");
    }
}

// evaluates the normalized qf formula under a theta case and mask bits
bool eval_masked(const CFormula& f, AtomTable& t, int theta, unsigned xmask,
                 unsigned ymask) {
    switch (f->kind) {
        case CNode::True:
            return true;
        case CNode::False:
            return false;
        case CNode::Sub:
        case CNode::Cov:
            return rel_truth(theta, rel_index(*f));
        case CNode::InLang: {
            bool isx = f->s.var == 0;
            std::size_t i = t.intern(isx ? t.x_atoms : t.y_atoms, *f->lang);
            return ((isx ? xmask : ymask) >> i) & 1;
        }
        case CNode::Not:
            return !eval_masked(f->kids[0], t, theta, xmask, ymask);
        case CNode::And:
            for (auto& k : f->kids)
                if (!eval_masked(k, t, theta, xmask, ymask)) return false;
            return true;
        case CNode::Or:
            for (auto& k : f->kids)
                if (eval_masked(k, t, theta, xmask, ymask)) return true;
            return false;
        default:
            throw Error("eval_masked: unexpected node");
    }
}

// swaps the roles of x and y in a normalized quantifier-free formula
CFormula swap_vars(const CFormula& f) {
    auto flip = [](CTerm t) {
        if (!t.is_const) t.var = 1 - t.var;
        return t;
    };
    switch (f->kind) {
        case CNode::True:
        case CNode::False:
            return f;
        case CNode::Sub:
            return cf_sub(flip(f->s), flip(f->t));
        case CNode::Cov:
            return cf_cov(flip(f->s), flip(f->t));
        case CNode::Eq:
            return cf_eq(flip(f->s), flip(f->t));
        case CNode::InLang:
            return cf_in(flip(f->s), *f->lang);
        case CNode::Not:
            return cf_not(swap_vars(f->kids[0]));
        case CNode::And:
        case CNode::Or: {
            std::vector<CFormula> kids;
            for (auto& k : f->kids) kids.push_back(swap_vars(k));
            CNode n;
            n.kind = f->kind;
            n.kids = std::move(kids);
            return mk(std::move(n));
        }
        case CNode::Quant:
            return cf_quant(1 - f->qvar, f->mode, swap_vars(f->kids[0]));
    }
    throw Error("unreachable");
}

// compositions of k into 6 nonnegative parts
void compositions(unsigned k, std::vector<std::array<unsigned, 6>>& out) {
    std::array<unsigned, 6> cur{};
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned rest) {
        if (i == 5) {
            cur[5] = rest;
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= rest; ++v) {
            cur[i] = v;
            rec(i + 1, rest - v);
        }
    };
    rec(0, k);
}

// residue tuples (p1..p6) in [0,q)^6 with sum ≡ p (mod q)
void residue_tuples(unsigned p, unsigned q, std::vector<std::array<unsigned, 6>>& out) {
    std::array<unsigned, 6> cur{};
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned sum) {
        if (i == 5) {
            cur[5] = (p + 5 * q - sum % q) % q;
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v < q; ++v) {
            cur[i] = v;
            rec(i + 1, sum + v);
        }
    };
    rec(0, 0);
}

}  // namespace

Dfa Cmod2Engine::qe_counting(const CFormula& phi0, int qvar, QuantMode mode) {
    // normal orientation: the bound variable is y
    CFormula phi = qvar == 1 ? phi0 : swap_vars(phi0);
    if (mode.kind == QuantMode::Exists) mode = QuantMode::at_least(1);
    if (mode.kind == QuantMode::AtLeast && mode.k == 0) return dfa_all(sigma_);
    if (mode.kind == QuantMode::Mod && (mode.q < 1 || mode.p >= mode.q))
        throw Error("qe_counting: need 0 <= p < q");
    if (mode.kind == QuantMode::Mod && mode.q > 6)
        throw ResourceLimit("qe_counting: modulus above 6 (residue tuple blowup)");

    AtomTable atoms;
    collect_atoms(phi, atoms);
    if (atoms.x_atoms.size() > 10 || atoms.y_atoms.size() > 10)
        throw ResourceLimit("qe_counting: too many distinct predicates");

    std::vector<std::array<unsigned, 6>> tuples;
    if (mode.kind == QuantMode::AtLeast)
        compositions(mode.k, tuples);
    else
        residue_tuples(mode.p, mode.q, tuples);

    Dfa result = dfa_none(sigma_);
    unsigned nx = static_cast<unsigned>(atoms.x_atoms.size());
    unsigned ny = static_cast<unsigned>(atoms.y_atoms.size());
    for (unsigned xmask = 0; xmask < (1u << nx); ++xmask) {
        // x region of this mask
        Dfa xregion = dfa_all(sigma_);
        for (unsigned i = 0; i < nx; ++i)
            xregion = intersect(xregion, (xmask >> i & 1)
                                             ? atoms.x_atoms[i]
                                             : complement(atoms.x_atoms[i]));
        if (is_empty(xregion)) continue;

        // per theta, the union of satisfying y regions
        std::array<Dfa, 7> yrange = {dfa_none(sigma_), dfa_none(sigma_),
                                     dfa_none(sigma_), dfa_none(sigma_),
                                     dfa_none(sigma_), dfa_none(sigma_),
                                     dfa_none(sigma_)};
        for (int theta = 1; theta <= 6; ++theta) {
            Dfa acc = dfa_none(sigma_);
            for (unsigned ymask = 0; ymask < (1u << ny); ++ymask) {
                if (!eval_masked(phi, atoms, theta, xmask, ymask)) continue;
                Dfa yregion = dfa_all(sigma_);
                for (unsigned i = 0; i < ny; ++i)
                    yregion = intersect(yregion, (ymask >> i & 1)
                                                     ? atoms.y_atoms[i]
                                                     : complement(atoms.y_atoms[i]));
                acc = unite(acc, yregion);
            }
            yrange[static_cast<std::size_t>(theta)] = acc;
        }

        Dfa per_mask = dfa_none(sigma_);
        for (const auto& tuple : tuples) {
            Dfa conj = dfa_all(sigma_);
            bool dead = false;
            for (int theta = 1; theta <= 6 && !dead; ++theta) {
                unsigned kp = tuple[static_cast<std::size_t>(theta - 1)];
                Dfa piece = counted(theta, yrange[static_cast<std::size_t>(theta)],
                                    mode.kind == QuantMode::Mod, kp, mode.q);
                conj = intersect(conj, piece);
                dead = is_empty(conj);
            }
            if (!dead) per_mask = unite(per_mask, conj);
        }
        result = unite(result, intersect(xregion, per_mask));
    }
    return result;
}

CFormula Cmod2Engine::eliminate(const CFormula& f) {
    switch (f->kind) {
        case CNode::True:
        case CNode::False:
        case CNode::Sub:
        case CNode::Cov:
        case CNode::Eq:
        case CNode::InLang:
            return f;
        case CNode::Not:
            return cf_not(eliminate(f->kids[0]));
        case CNode::And:
        case CNode::Or: {
            std::vector<CFormula> kids;
            for (auto& k : f->kids) kids.push_back(eliminate(k));
            CNode n;
            n.kind = f->kind;
            n.kids = std::move(kids);
            return mk(std::move(n));
        }
        case CNode::Quant: {
            CFormula body = eliminate(f->kids[0]);
            Dfa k = qe_counting(body, f->qvar, f->mode);
            return cf_in(CTerm::var_index(1 - f->qvar), k);
        }
    }
    throw Error("unreachable");
}

namespace {

// evaluates the post-elimination formula as the language of its single
// free variable; predicates on the other variable must be vacuous (Σ*/∅)
Dfa language_of(const CFormula& f, int var, const Alphabet& sigma) {
    switch (f->kind) {
        case CNode::True:
            return dfa_all(sigma);
        case CNode::False:
            return dfa_none(sigma);
        case CNode::InLang: {
            if (f->s.var == var) return *f->lang;
            Dfa other = *f->lang;
            if (is_empty(other)) return dfa_none(sigma);
            if (is_empty(complement(other))) return dfa_all(sigma);
            throw Error("define_language: more than one free variable");
        }
        case CNode::Not:
            return complement(language_of(f->kids[0], var, sigma));
        case CNode::And:
        case CNode::Or: {
            Dfa acc = language_of(f->kids[0], var, sigma);
            for (std::size_t i = 1; i < f->kids.size(); ++i) {
                Dfa next = language_of(f->kids[i], var, sigma);
                acc = f->kind == CNode::And ? intersect(acc, next) : unite(acc, next);
            }
            return acc;
        }
        default:
            throw Error("define_language: relational atom with two free variables");
    }
}

}  // namespace

Dfa Cmod2Engine::define_language(const CFormula& f) {
    std::set<int> fv = cf_free_vars(f);
    if (fv.count(1) && fv.count(0))
        throw Error("define_language: more than one free variable");
    int var = fv.count(1) ? 1 : 0;
    CFormula qf = eliminate(normalize_atoms(f, sigma_));
    return language_of(qf, var, sigma_);
}

namespace {

CFormula relativize(const CFormula& f, const Dfa& l) {
    switch (f->kind) {
        case CNode::Quant: {
            CFormula body = relativize(f->kids[0], l);
            return cf_quant(f->qvar, f->mode,
                            cf_and({cf_in(CTerm::var_index(f->qvar), l), body}));
        }
        case CNode::Not:
            return cf_not(relativize(f->kids[0], l));
        case CNode::And:
        case CNode::Or: {
            std::vector<CFormula> kids;
            for (auto& k : f->kids) kids.push_back(relativize(k, l));
            CNode n;
            n.kind = f->kind;
            n.kids = std::move(kids);
            return mk(std::move(n));
        }
        default:
            return f;
    }
}

void check_constants(const CFormula& f, const Dfa& l) {
    switch (f->kind) {
        case CNode::Sub:
        case CNode::Cov:
        case CNode::Eq:
            for (const CTerm* t : {&f->s, &f->t})
                if (t->is_const && !l.accepts(t->w))
                    throw Error("constant not in L: " +
                                word_to_string(l.alphabet(), t->w));
            return;
        case CNode::InLang:
            if (f->s.is_const && !l.accepts(f->s.w))
                throw Error("constant not in L: " +
                            word_to_string(l.alphabet(), f->s.w));
            return;
        case CNode::Not:
        case CNode::And:
        case CNode::Or:
        case CNode::Quant:
            for (auto& k : f->kids) check_constants(k, l);
            return;
        default:
            return;
    }
}

}  // namespace

bool Cmod2Engine::decide(const CFormula& sentence, const Dfa& l) {
    if (!cf_free_vars(sentence).empty())
        throw Error("decide: sentence has free variables");
    if (l.alphabet() != sigma_) throw AlphabetMismatch("decide: L over wrong alphabet");
    check_constants(sentence, l);
    CFormula rel = relativize(sentence, l);
    CFormula qf = eliminate(normalize_atoms(rel, sigma_));
    // ground evaluation: every remaining predicate is vacuous
    std::function<bool(const CFormula&)> ground = [&](const CFormula& g) -> bool {
        switch (g->kind) {
            case CNode::True:
                return true;
            case CNode::False:
                return false;
            case CNode::InLang:
                if (is_empty(*g->lang)) return false;
                if (is_empty(complement(*g->lang))) return true;
                throw Error("decide: non-ground predicate after elimination");
            case CNode::Not:
                return !ground(g->kids[0]);
            case CNode::And:
                for (auto& k : g->kids)
                    if (!ground(k)) return false;
                return true;
            case CNode::Or:
                for (auto& k : g->kids)
                    if (ground(k)) return true;
                return false;
            default:
                throw Error("decide: unexpected node after elimination");
        }
    };
    return ground(qf);
}

bool decide_cmod2(const CFormula& sentence, const Dfa& l) {
    Cmod2Engine engine(l.alphabet());
    return engine.decide(sentence, l);
}

}  // namespace subtess
