#include "subtess/presburger.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <optional>
#include <set>

#include "subtess/weighted.hpp"

namespace subtess {

namespace {

PFormula mk(PNode n) { return std::make_shared<const PNode>(std::move(n)); }

}  // namespace

PFormula pf_true() {
    PNode n;
    n.kind = PNode::True;
    return mk(std::move(n));
}

PFormula pf_false() {
    PNode n;
    n.kind = PNode::False;
    return mk(std::move(n));
}

PFormula pf_linear(std::map<std::string, std::int64_t> coeffs, bool is_eq,
                   std::int64_t rhs) {
    PNode n;
    n.kind = PNode::Linear;
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = (it->second == 0) ? coeffs.erase(it) : std::next(it);
    n.coeffs = std::move(coeffs);
    n.is_eq = is_eq;
    n.rhs = rhs;
    return mk(std::move(n));
}

PFormula pf_mod(std::map<std::string, std::int64_t> coeffs, std::int64_t residue,
                std::int64_t modulus) {
    if (modulus < 1) throw Error("mod atom: modulus must be >= 1");
    PNode n;
    n.kind = PNode::ModAtom;
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = (it->second == 0) ? coeffs.erase(it) : std::next(it);
    n.coeffs = std::move(coeffs);
    n.residue = ((residue % modulus) + modulus) % modulus;
    n.modulus = modulus;
    return mk(std::move(n));
}

PFormula pf_not(PFormula a) {
    PNode n;
    n.kind = PNode::Not;
    n.kids = {std::move(a)};
    return mk(std::move(n));
}

PFormula pf_and(std::vector<PFormula> kids) {
    if (kids.empty()) return pf_true();
    if (kids.size() == 1) return kids[0];
    PNode n;
    n.kind = PNode::And;
    n.kids = std::move(kids);
    return mk(std::move(n));
}

PFormula pf_or(std::vector<PFormula> kids) {
    if (kids.empty()) return pf_false();
    if (kids.size() == 1) return kids[0];
    PNode n;
    n.kind = PNode::Or;
    n.kids = std::move(kids);
    return mk(std::move(n));
}

PFormula pf_exists(std::string var, PFormula body) {
    PNode n;
    n.kind = PNode::Exists;
    n.var = std::move(var);
    n.kids = {std::move(body)};
    return mk(std::move(n));
}

PFormula pf_exists_block(const std::vector<std::string>& vars, PFormula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = pf_exists(*it, body);
    return body;
}

PFormula pf_count_at_least(unsigned k, std::string var, PFormula body) {
    PNode n;
    n.kind = PNode::Count;
    n.count_is_mod = false;
    n.count_k = k;
    n.var = std::move(var);
    n.kids = {std::move(body)};
    return mk(std::move(n));
}

PFormula pf_count_mod(unsigned p, unsigned q, std::string var, PFormula body) {
    if (q < 1 || p >= q) throw Error("count mod: need 0 <= p < q");
    PNode n;
    n.kind = PNode::Count;
    n.count_is_mod = true;
    n.count_p = p;
    n.count_q = q;
    n.var = std::move(var);
    n.kids = {std::move(body)};
    return mk(std::move(n));
}

PFormula pf_apply(PFormula body, std::map<std::string, std::string> rename) {
    PNode n;
    n.kind = PNode::Apply;
    n.body = std::move(body);
    n.rename = std::move(rename);
    return mk(std::move(n));
}

namespace {

void free_vars_into(const PFormula& f, std::set<std::string>& out) {
    switch (f->kind) {
        case PNode::True:
        case PNode::False:
            return;
        case PNode::Linear:
        case PNode::ModAtom:
            for (auto& [v, c] : f->coeffs) out.insert(v);
            return;
        case PNode::Not:
        case PNode::And:
        case PNode::Or:
            for (auto& k : f->kids) free_vars_into(k, out);
            return;
        case PNode::Exists:
        case PNode::Count: {
            std::set<std::string> inner;
            free_vars_into(f->kids[0], inner);
            inner.erase(f->var);
            out.insert(inner.begin(), inner.end());
            return;
        }
        case PNode::Apply: {
            std::set<std::string> inner;
            free_vars_into(f->body, inner);
            for (const auto& v : inner) {
                auto it = f->rename.find(v);
                out.insert(it == f->rename.end() ? v : it->second);
            }
            return;
        }
    }
}

}  // namespace

std::vector<std::string> pf_free_vars(const PFormula& f) {
    std::set<std::string> s;
    free_vars_into(f, s);
    return {s.begin(), s.end()};
}

PFormula pf_rename_free(const PFormula& f,
                        const std::map<std::string, std::string>& rename) {
    if (rename.empty()) return f;
    auto renamed = [&](const std::string& v) {
        auto it = rename.find(v);
        return it == rename.end() ? v : it->second;
    };
    switch (f->kind) {
        case PNode::True:
        case PNode::False:
            return f;
        case PNode::Linear:
        case PNode::ModAtom: {
            PNode n = *f;
            n.coeffs.clear();
            for (auto& [v, c] : f->coeffs) n.coeffs[renamed(v)] += c;
            return mk(std::move(n));
        }
        case PNode::Not:
        case PNode::And:
        case PNode::Or: {
            PNode n = *f;
            for (auto& k : n.kids) k = pf_rename_free(k, rename);
            return mk(std::move(n));
        }
        case PNode::Exists:
        case PNode::Count: {
            std::map<std::string, std::string> inner = rename;
            inner.erase(f->var);
            for (auto& [from, to] : inner)
                if (to == f->var) throw Error("pf_rename_free: capture of " + to);
            PNode n = *f;
            n.kids[0] = pf_rename_free(f->kids[0], inner);
            return mk(std::move(n));
        }
        case PNode::Apply: {
            PNode n = *f;
            std::set<std::string> inner;
            free_vars_into(f->body, inner);
            for (const auto& v : inner) {
                auto it = n.rename.find(v);
                if (it == n.rename.end())
                    n.rename[v] = renamed(v);
                else
                    it->second = renamed(it->second);
            }
            return mk(std::move(n));
        }
    }
    throw Error("unreachable");
}

PFormula pf_lower_thresholds(const PFormula& f) {
    switch (f->kind) {
        case PNode::True:
        case PNode::False:
        case PNode::Linear:
        case PNode::ModAtom:
            return f;
        case PNode::Not:
        case PNode::And:
        case PNode::Or: {
            PNode n = *f;
            for (auto& k : n.kids) k = pf_lower_thresholds(k);
            return mk(std::move(n));
        }
        case PNode::Exists: {
            PNode n = *f;
            n.kids[0] = pf_lower_thresholds(f->kids[0]);
            return mk(std::move(n));
        }
        case PNode::Count: {
            PFormula body = pf_lower_thresholds(f->kids[0]);
            if (f->count_is_mod) {
                PNode n = *f;
                n.kids[0] = std::move(body);
                return mk(std::move(n));
            }
            unsigned k = f->count_k;
            if (k == 0) return pf_true();
            std::set<std::string> avoid;
            free_vars_into(body, avoid);
            std::vector<std::string> names;
            for (unsigned i = 1; i <= k; ++i) {
                std::string cand = f->var + "_" + std::to_string(i);
                while (avoid.count(cand)) cand += "x";
                avoid.insert(cand);
                names.push_back(cand);
            }
            std::vector<PFormula> conj;
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = i + 1; j < k; ++j)
                    conj.push_back(pf_not(pf_linear(
                        {{names[i], 1}, {names[j], -1}}, true, 0)));
            for (unsigned i = 0; i < k; ++i)
                conj.push_back(pf_rename_free(body, {{f->var, names[i]}}));
            return pf_exists_block(names, pf_and(std::move(conj)));
        }
        case PNode::Apply: {
            PNode n = *f;
            n.body = pf_lower_thresholds(f->body);
            return mk(std::move(n));
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// solution automata

Alphabet bit_alphabet(std::size_t tracks) {
    if (tracks > 16)
        throw ResourceLimit("bit_alphabet: more than 16 live tracks (" +
                            std::to_string(tracks) + ")");
    std::vector<std::string> labels;
    labels.reserve(std::size_t{1} << tracks);
    for (std::size_t m = 0; m < (std::size_t{1} << tracks); ++m) {
        std::string l(tracks, '0');
        for (std::size_t i = 0; i < tracks; ++i)
            if (m >> i & 1) l[i] = '1';
        labels.push_back(std::move(l));
    }
    return Alphabet(std::move(labels));
}

namespace {

std::int64_t floor_half(std::int64_t x) { return x >= 0 ? x / 2 : (x - 1) / 2; }

SolutionAutomaton linear_automaton(const PNode& atom,
                                   const std::vector<std::string>& vars) {
    Alphabet alpha = bit_alphabet(vars.size());
    std::vector<std::int64_t> coef(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = atom.coeffs.find(vars[i]);
        if (it != atom.coeffs.end()) coef[i] = it->second;
    }
    std::size_t k = alpha.size();
    std::vector<std::int64_t> colsum(k, 0);
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (m >> i & 1) colsum[m] += coef[i];

    std::map<std::int64_t, std::uint32_t> ids;
    std::vector<std::int64_t> states;
    auto intern = [&](std::int64_t r) {
        auto [it, fresh] = ids.emplace(r, static_cast<std::uint32_t>(states.size()));
        if (fresh) states.push_back(r);
        return it->second;
    };
    intern(atom.rhs);
    std::vector<std::uint32_t> delta;
    std::vector<bool> acc;
    bool need_dead = false;
    const std::uint32_t DEAD = UINT32_MAX;
    for (std::uint32_t i = 0; i < states.size(); ++i) {
        if (states.size() > 100000) throw ResourceLimit("linear atom state blowup");
        std::int64_t r = states[i];
        acc.push_back(atom.is_eq ? r == 0 : r >= 0);
        for (std::size_t m = 0; m < k; ++m) {
            std::int64_t d = r - colsum[m];
            if (atom.is_eq) {
                if (d % 2 != 0) {
                    delta.push_back(DEAD);
                    need_dead = true;
                } else {
                    delta.push_back(intern(d / 2));
                }
            } else {
                delta.push_back(intern(floor_half(d)));
            }
        }
    }
    std::uint32_t n = static_cast<std::uint32_t>(states.size());
    if (need_dead) {
        for (auto& t : delta)
            if (t == DEAD) t = n;
        for (std::size_t m = 0; m < k; ++m) delta.push_back(n);
        acc.push_back(false);
        ++n;
    }
    return {vars, Dfa(alpha, n, std::move(delta), 0, std::move(acc)),
            SolutionAutomaton::PAD};
}

SolutionAutomaton mod_automaton(const PNode& atom,
                                const std::vector<std::string>& vars) {
    Alphabet alpha = bit_alphabet(vars.size());
    std::int64_t m0 = atom.modulus;
    std::vector<std::int64_t> coef(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = atom.coeffs.find(vars[i]);
        if (it != atom.coeffs.end()) coef[i] = ((it->second % m0) + m0) % m0;
    }
    std::size_t k = alpha.size();
    std::vector<std::int64_t> colsum(k, 0);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (m >> i & 1) colsum[m] += coef[i];
        colsum[m] %= m0;
    }
    // state = (accumulated residue, current power of two mod m)
    std::map<std::int64_t, std::uint32_t> ids;
    std::vector<std::pair<std::int64_t, std::int64_t>> states;
    auto intern = [&](std::int64_t rho, std::int64_t pi) {
        auto [it, fresh] =
            ids.emplace(rho * m0 + pi, static_cast<std::uint32_t>(states.size()));
        if (fresh) states.push_back({rho, pi});
        return it->second;
    };
    intern(0, 1 % m0);
    std::vector<std::uint32_t> delta;
    std::vector<bool> acc;
    for (std::uint32_t i = 0; i < states.size(); ++i) {
        auto [rho, pi] = states[i];
        acc.push_back(rho == atom.residue % m0);
        for (std::size_t m = 0; m < k; ++m)
            delta.push_back(intern((rho + pi * colsum[m]) % m0, (2 * pi) % m0));
    }
    return {vars,
            Dfa(alpha, static_cast<std::uint32_t>(states.size()), std::move(delta), 0,
                std::move(acc)),
            SolutionAutomaton::PAD};
}

}  // namespace

SolutionAutomaton atom_automaton(const PFormula& atom,
                                 const std::vector<std::string>& vars) {
    assert(std::is_sorted(vars.begin(), vars.end()));
    switch (atom->kind) {
        case PNode::True:
            return {vars, dfa_all(bit_alphabet(vars.size())), SolutionAutomaton::PAD};
        case PNode::False:
            return {vars, dfa_none(bit_alphabet(vars.size())), SolutionAutomaton::PAD};
        case PNode::Linear:
            return linear_automaton(*atom, vars);
        case PNode::ModAtom:
            return mod_automaton(*atom, vars);
        default:
            throw Error("atom_automaton: not an atom");
    }
}

SolutionAutomaton cylindrify(const SolutionAutomaton& a,
                             const std::vector<std::string>& vars) {
    if (a.form != SolutionAutomaton::PAD) throw Error("cylindrify: PAD form required");
    if (vars == a.vars) return a;
    assert(std::is_sorted(vars.begin(), vars.end()));
    std::vector<std::size_t> pos;  // position of each old track in the new set
    for (const auto& v : a.vars) {
        auto it = std::lower_bound(vars.begin(), vars.end(), v);
        if (it == vars.end() || *it != v)
            throw Error("cylindrify: new variable set must contain old one");
        pos.push_back(static_cast<std::size_t>(it - vars.begin()));
    }
    Alphabet alpha = bit_alphabet(vars.size());
    std::vector<Word> h;
    h.reserve(alpha.size());
    for (std::size_t m = 0; m < alpha.size(); ++m) {
        Sym old = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (m >> pos[i] & 1) old |= Sym{1} << i;
        h.push_back(Word{old});
    }
    return {vars, inverse_homomorphism(a.dfa, alpha, h), SolutionAutomaton::PAD};
}

namespace {

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

SolutionAutomaton solution_and(const SolutionAutomaton& a,
                               const SolutionAutomaton& b) {
    auto vars = union_vars(a.vars, b.vars);
    return {vars, intersect(cylindrify(a, vars).dfa, cylindrify(b, vars).dfa),
            SolutionAutomaton::PAD};
}

SolutionAutomaton solution_or(const SolutionAutomaton& a, const SolutionAutomaton& b) {
    auto vars = union_vars(a.vars, b.vars);
    return {vars, unite(cylindrify(a, vars).dfa, cylindrify(b, vars).dfa),
            SolutionAutomaton::PAD};
}

SolutionAutomaton solution_not(const SolutionAutomaton& a) {
    if (a.form != SolutionAutomaton::PAD) throw Error("solution_not: PAD required");
    return {a.vars, complement(a.dfa), SolutionAutomaton::PAD};
}

SolutionAutomaton solution_exists(const SolutionAutomaton& a, const std::string& var) {
    if (a.form != SolutionAutomaton::PAD)
        throw Error("solution_exists: PAD required");
    auto it = std::lower_bound(a.vars.begin(), a.vars.end(), var);
    if (it == a.vars.end() || *it != var)
        throw Error("solution_exists: unknown variable " + var);
    std::size_t pos = static_cast<std::size_t>(it - a.vars.begin());
    std::vector<std::string> vars = a.vars;
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pos));

    Alphabet alpha = bit_alphabet(vars.size());
    Nfa proj{alpha};
    proj.states = a.dfa.states();
    proj.initial = {0};
    std::size_t oldk = a.dfa.alphabet().size();
    for (std::uint32_t q = 0; q < a.dfa.states(); ++q) {
        if (a.dfa.accepting(q)) proj.accepting.insert(q);
        for (std::size_t m = 0; m < oldk; ++m) {
            Sym low = static_cast<Sym>(m & ((std::size_t{1} << pos) - 1));
            Sym high = static_cast<Sym>((m >> (pos + 1)) << pos);
            proj.transitions.insert(
                {q, low | high, a.dfa.next(q, static_cast<Sym>(m))});
        }
    }
    Dfa det = determinize_minimize(proj);

    // re-saturate: accept u iff some u·(zero columns) is accepted
    std::vector<bool> acc(det.states());
    for (std::uint32_t q = 0; q < det.states(); ++q) acc[q] = det.accepting(q);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t q = 0; q < det.states(); ++q)
            if (!acc[q] && acc[det.next(q, 0)]) {
                acc[q] = true;
                changed = true;
            }
    }
    return {vars, Dfa(alpha, det.states(), det.delta(), 0, std::move(acc)),
            SolutionAutomaton::PAD};
}

namespace {

// Words not ending in the all-zero column (the canonical-word universe).
Dfa no_trailing_zero(const Alphabet& alpha) {
    std::size_t k = alpha.size();
    std::vector<std::uint32_t> delta(2 * k);
    for (std::size_t m = 0; m < k; ++m) {
        delta[m] = m == 0 ? 1 : 0;
        delta[k + m] = m == 0 ? 1 : 0;
    }
    return Dfa(alpha, 2, std::move(delta), 0, {true, false});
}

}  // namespace

SolutionAutomaton to_canonical(const SolutionAutomaton& a) {
    if (a.form == SolutionAutomaton::CAN) return a;
    return {a.vars, intersect(a.dfa, no_trailing_zero(a.dfa.alphabet())),
            SolutionAutomaton::CAN};
}

SolutionAutomaton to_padded(const SolutionAutomaton& a) {
    if (a.form == SolutionAutomaton::PAD) return a;
    Nfa n{a.dfa.alphabet()};
    n.states = a.dfa.states() + 1;
    std::uint32_t pad = a.dfa.states();
    n.initial = {0};
    for (std::uint32_t q = 0; q < a.dfa.states(); ++q) {
        if (a.dfa.accepting(q)) {
            n.accepting.insert(q);
            n.transitions.insert({q, 0, pad});
        }
        for (Sym s = 0; s < a.dfa.alphabet().size(); ++s)
            n.transitions.insert({q, s, a.dfa.next(q, s)});
    }
    n.transitions.insert({pad, 0, pad});
    n.accepting.insert(pad);
    return {a.vars, determinize_minimize(n), SolutionAutomaton::PAD};
}

SolutionAutomaton count_exists(const SolutionAutomaton& a0, const std::string& var,
                               CountMode mode) {
    SolutionAutomaton a = to_padded(a0);
    {
        auto it = std::lower_bound(a.vars.begin(), a.vars.end(), var);
        if (it == a.vars.end() || *it != var)
            a = cylindrify(a, union_vars(a.vars, {var}));
    }
    SolutionAutomaton can = to_canonical(a);
    std::size_t pos = static_cast<std::size_t>(
        std::lower_bound(can.vars.begin(), can.vars.end(), var) - can.vars.begin());
    std::vector<std::string> xvars = can.vars;
    xvars.erase(xvars.begin() + static_cast<std::ptrdiff_t>(pos));
    Alphabet xalpha = bit_alphabet(xvars.size());

    auto finish = [&](const Dfa& counts_ok) {
        Dfa canonical = intersect(counts_ok, no_trailing_zero(xalpha));
        return to_padded({xvars, canonical, SolutionAutomaton::CAN});
    };

    // keep only states on some accepting path; the matrices index these
    const Dfa& d = can.dfa;
    std::vector<std::uint32_t> trim;
    std::vector<std::uint32_t> trim_id(d.states(), UINT32_MAX);
    {
        std::vector<bool> co(d.states(), false);
        std::vector<std::vector<std::uint32_t>> preds(d.states());
        for (std::uint32_t q = 0; q < d.states(); ++q)
            for (Sym s = 0; s < d.alphabet().size(); ++s)
                preds[d.next(q, s)].push_back(q);
        std::deque<std::uint32_t> todo;
        for (std::uint32_t q = 0; q < d.states(); ++q)
            if (d.accepting(q)) {
                co[q] = true;
                todo.push_back(q);
            }
        while (!todo.empty()) {
            auto q = todo.front();
            todo.pop_front();
            for (auto p : preds[q])
                if (!co[p]) {
                    co[p] = true;
                    todo.push_back(p);
                }
        }
        for (std::uint32_t q = 0; q < d.states(); ++q)
            if (co[q]) {
                trim_id[q] = static_cast<std::uint32_t>(trim.size());
                trim.push_back(q);
            }
    }
    if (trim.empty() || trim_id[0] == UINT32_MAX) {
        // no solutions at all: every count is 0
        bool zero_ok = mode.is_mod ? mode.p == 0 : mode.k == 0;
        return finish(zero_ok ? dfa_all(xalpha) : dfa_none(xalpha));
    }

    std::size_t n = trim.size();
    Semiring ninf = Semiring::ninf();
    WeightedAutomaton wa{ninf, xalpha, n, Mat::zeros(1, n, ninf), {},
                         Mat::zeros(n, 1, ninf)};
    wa.lambda.at(0, trim_id[0]) = SemiringValue::one(ninf);
    auto joint = [&](std::size_t xcol, unsigned ybit) {
        std::size_t low = xcol & ((std::size_t{1} << pos) - 1);
        std::size_t high = (xcol >> pos) << (pos + 1);
        return static_cast<Sym>(low | high | (std::size_t{ybit} << pos));
    };
    for (std::size_t m = 0; m < xalpha.size(); ++m) {
        Mat mat = Mat::zeros(n, n, ninf);
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned b = 0; b <= 1; ++b) {
                std::uint32_t t = d.next(trim[i], joint(m, b));
                if (trim_id[t] == UINT32_MAX) continue;
                mat.at(i, trim_id[t]) =
                    mat.at(i, trim_id[t]) + SemiringValue::one(ninf);
            }
        wa.mu.push_back(std::move(mat));
    }
    Mat nu = Mat::zeros(n, 1, ninf);
    for (std::size_t i = 0; i < n; ++i)
        if (d.accepting(trim[i])) nu.at(i, 0) = SemiringValue::one(ninf);
    // continuations whose remaining x-columns are all zero, ending properly
    // (the CAN language itself excludes trailing all-zero columns)
    wa.nu = mat_mul(star_matrix(wa.mu[0]), nu);

    if (!mode.is_mod) {
        if (mode.k == 0) return finish(dfa_all(xalpha));
        Semiring sk = Semiring::sk(mode.k);
        std::set<SemiringValue> target{SemiringValue::finite(sk, mode.k),
                                       SemiringValue::infinity(sk)};
        return finish(preimage_regular(map_semiring(wa, sk), target));
    }
    Semiring zq = Semiring::zq(mode.q);
    std::set<SemiringValue> target{SemiringValue::finite(zq, mode.p)};
    if (mode.p == 0) target.insert(SemiringValue::finite(zq, mode.q));
    return finish(preimage_regular(map_semiring(wa, zq), target));
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

SolutionAutomaton rename_tracks(const SolutionAutomaton& a,
                                const std::map<std::string, std::string>& rename) {
    std::vector<std::pair<std::string, std::size_t>> named;
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
        auto it = rename.find(a.vars[i]);
        named.push_back({it == rename.end() ? a.vars[i] : it->second, i});
    }
    std::sort(named.begin(), named.end());
    for (std::size_t i = 1; i < named.size(); ++i)
        if (named[i].first == named[i - 1].first)
            throw Error("rename_tracks: variable collision on " + named[i].first);
    std::vector<std::string> vars;
    std::vector<std::size_t> oldpos;
    for (auto& [name, p] : named) {
        vars.push_back(name);
        oldpos.push_back(p);
    }
    if (vars == a.vars) return {vars, a.dfa, a.form};
    std::size_t k = a.dfa.alphabet().size();
    Alphabet alpha = bit_alphabet(vars.size());
    std::vector<std::uint32_t> delta(a.dfa.states() * k);
    for (std::uint32_t q = 0; q < a.dfa.states(); ++q)
        for (std::size_t m = 0; m < k; ++m) {
            std::size_t old = 0;
            for (std::size_t i = 0; i < oldpos.size(); ++i)
                if (m >> i & 1) old |= std::size_t{1} << oldpos[i];
            delta[q * k + m] = a.dfa.next(q, static_cast<Sym>(old));
        }
    std::vector<bool> acc(a.dfa.states());
    for (std::uint32_t q = 0; q < a.dfa.states(); ++q) acc[q] = a.dfa.accepting(q);
    return {vars, Dfa(alpha, a.dfa.states(), std::move(delta), 0, std::move(acc)),
            a.form};
}

}  // namespace

SolutionAutomaton PresburgerEngine::eval(const PFormula& f) {
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
    SolutionAutomaton r = eval_uncached(f);
    cache_.emplace(f, r);
    return r;
}

SolutionAutomaton PresburgerEngine::eval_uncached(const PFormula& f) {
    switch (f->kind) {
        case PNode::True:
        case PNode::False:
        case PNode::Linear:
        case PNode::ModAtom:
            return atom_automaton(f, pf_free_vars(f));
        case PNode::Not:
            return solution_not(eval(f->kids[0]));
        case PNode::And:
        case PNode::Or: {
            SolutionAutomaton acc = eval(f->kids[0]);
            for (std::size_t i = 1; i < f->kids.size(); ++i) {
                SolutionAutomaton next = eval(f->kids[i]);
                acc = f->kind == PNode::And ? solution_and(acc, next)
                                            : solution_or(acc, next);
            }
            return acc;
        }
        case PNode::Exists:
            return eval_exists_block(f);
        case PNode::Count: {
            SolutionAutomaton body = eval(f->kids[0]);
            CountMode mode = f->count_is_mod
                                 ? CountMode::mod(f->count_p, f->count_q)
                                 : CountMode::at_least(f->count_k);
            return count_exists(body, f->var, mode);
        }
        case PNode::Apply:
            return rename_tracks(eval(f->body), f->rename);
    }
    throw Error("unreachable");
}

SolutionAutomaton PresburgerEngine::eval_exists_block(const PFormula& f) {
    // gather the ∃ chain and flatten the conjunction under it
    std::vector<std::string> bound;
    PFormula body = f;
    while (body->kind == PNode::Exists) {
        bound.push_back(body->var);
        body = body->kids[0];
    }
    std::vector<PFormula> parts;
    std::function<void(const PFormula&)> flatten = [&](const PFormula& g) {
        if (g->kind == PNode::And)
            for (auto& k : g->kids) flatten(k);
        else
            parts.push_back(g);
    };
    flatten(body);

    struct Item {
        std::optional<SolutionAutomaton> a;
        PFormula formula;
        std::vector<std::string> fv;
    };
    std::vector<Item> items;
    for (auto& p : parts) items.push_back({std::nullopt, p, pf_free_vars(p)});

    std::set<std::string> live;
    {
        std::set<std::string> free_in_body;
        for (auto& it2 : items) free_in_body.insert(it2.fv.begin(), it2.fv.end());
        for (auto& v : bound)
            if (free_in_body.count(v)) live.insert(v);
    }

    auto materialize = [&](Item& it2) {
        if (!it2.a) it2.a = eval(it2.formula);
    };

    // greedy elimination: repeatedly solve for the variable whose
    // constraints span the fewest tracks
    while (!live.empty()) {
        std::string best;
        std::size_t best_width = SIZE_MAX;
        for (const auto& v : live) {
            std::set<std::string> footprint;
            for (const auto& it2 : items)
                if (std::binary_search(it2.fv.begin(), it2.fv.end(), v))
                    footprint.insert(it2.fv.begin(), it2.fv.end());
            if (footprint.size() < best_width) {
                best_width = footprint.size();
                best = v;
            }
        }
        std::vector<Item> keep;
        std::optional<SolutionAutomaton> merged;
        for (auto& it2 : items) {
            if (!std::binary_search(it2.fv.begin(), it2.fv.end(), best)) {
                keep.push_back(std::move(it2));
                continue;
            }
            materialize(it2);
            merged = merged ? solution_and(*merged, *it2.a) : *it2.a;
        }
        SolutionAutomaton reduced = solution_exists(*merged, best);
        keep.push_back({reduced, nullptr, reduced.vars});
        items = std::move(keep);
        live.erase(best);
    }

    std::optional<SolutionAutomaton> result;
    for (auto& it2 : items) {
        materialize(it2);
        result = result ? solution_and(*result, *it2.a) : *it2.a;
    }
    if (!result)
        return {std::vector<std::string>{}, dfa_all(bit_alphabet(0)),
                SolutionAutomaton::PAD};
    return *result;
}

bool decide_sentence(const PFormula& sentence) {
    if (!pf_free_vars(sentence).empty())
        throw Error("decide_sentence: formula has free variables");
    PresburgerEngine engine;
    SolutionAutomaton a = engine.eval(sentence);
    return a.dfa.accepting(0);
}

std::vector<std::vector<std::uint64_t>> solutions_upto(const SolutionAutomaton& a,
                                                       std::uint64_t bound) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> tuple(a.vars.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == tuple.size()) {
            if (solution_contains(a, tuple)) out.push_back(tuple);
            return;
        }
        for (std::uint64_t v = 0; v <= bound; ++v) {
            tuple[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

bool solution_contains(const SolutionAutomaton& a,
                       const std::vector<std::uint64_t>& tuple) {
    if (tuple.size() != a.vars.size())
        throw Error("solution_contains: arity mismatch");
    std::size_t len = 0;
    for (auto v : tuple) {
        std::size_t bits = 0;
        while (v >> bits && bits < 64) ++bits;
        len = std::max(len, bits);
    }
    Word w;
    for (std::size_t i = 0; i < len; ++i) {
        Sym col = 0;
        for (std::size_t t = 0; t < tuple.size(); ++t)
            if (tuple[t] >> i & 1) col |= Sym{1} << t;
        w.push_back(col);
    }
    // the minimal encoding has no trailing zero columns: valid in both forms
    return a.dfa.accepts(w);
}

}  // namespace subtess
