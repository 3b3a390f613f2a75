#include "subtess/dfa.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <queue>
#include <unordered_map>

#include "subtess/errors.hpp"

namespace subtess {

namespace {

struct Raw {
    Alphabet alphabet;
    std::uint32_t states = 0;
    std::vector<std::uint32_t> delta;  // states * |Σ|
    std::uint32_t initial = 0;
    std::vector<bool> accepting;
};

// Restrict to states reachable from the initial one.
Raw reachable_part(const Raw& r) {
    std::size_t k = r.alphabet.size();
    std::vector<std::uint32_t> id(r.states, UINT32_MAX);
    std::vector<std::uint32_t> order;
    id[r.initial] = 0;
    order.push_back(r.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::uint32_t q = order[i];
        for (std::size_t a = 0; a < k; ++a) {
            std::uint32_t t = r.delta[q * k + a];
            if (id[t] == UINT32_MAX) {
                id[t] = static_cast<std::uint32_t>(order.size());
                order.push_back(t);
            }
        }
    }
    Raw out{r.alphabet};
    out.states = static_cast<std::uint32_t>(order.size());
    out.initial = 0;
    out.delta.resize(out.states * k);
    out.accepting.resize(out.states);
    for (std::uint32_t i = 0; i < out.states; ++i) {
        std::uint32_t q = order[i];
        out.accepting[i] = r.accepting[q];
        for (std::size_t a = 0; a < k; ++a)
            out.delta[i * k + a] = id[r.delta[q * k + a]];
    }
    return out;
}

// Moore partition refinement (signature hashing per round).
Raw minimize(const Raw& in) {
    Raw r = reachable_part(in);
    std::size_t k = r.alphabet.size();
    std::vector<std::uint32_t> cls(r.states);
    for (std::uint32_t q = 0; q < r.states; ++q) cls[q] = r.accepting[q] ? 1 : 0;
    std::uint32_t classes = 2;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next(r.states);
        for (std::uint32_t q = 0; q < r.states; ++q) {
            std::vector<std::uint32_t> sig;
            sig.reserve(k + 1);
            sig.push_back(cls[q]);
            for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[r.delta[q * k + a]]);
            auto [it, fresh] = sig_ids.emplace(std::move(sig),
                                               static_cast<std::uint32_t>(sig_ids.size()));
            next[q] = it->second;
        }
        std::uint32_t nclasses = static_cast<std::uint32_t>(sig_ids.size());
        cls.swap(next);
        if (nclasses == classes) break;
        classes = nclasses;
    }
    Raw out{r.alphabet};
    out.states = classes;
    out.initial = cls[r.initial];
    out.delta.assign(classes * k, 0);
    out.accepting.assign(classes, false);
    for (std::uint32_t q = 0; q < r.states; ++q) {
        out.accepting[cls[q]] = r.accepting[q];
        for (std::size_t a = 0; a < k; ++a)
            out.delta[cls[q] * k + a] = cls[r.delta[q * k + a]];
    }
    return out;
}

// BFS renumbering, symbols in alphabet order: the unique canonical layout.
Raw bfs_order(const Raw& r) {
    std::size_t k = r.alphabet.size();
    std::vector<std::uint32_t> id(r.states, UINT32_MAX);
    std::vector<std::uint32_t> order;
    id[r.initial] = 0;
    order.push_back(r.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::uint32_t q = order[i];
        for (std::size_t a = 0; a < k; ++a) {
            std::uint32_t t = r.delta[q * k + a];
            if (id[t] == UINT32_MAX) {
                id[t] = static_cast<std::uint32_t>(order.size());
                order.push_back(t);
            }
        }
    }
    assert(order.size() == r.states);
    Raw out{r.alphabet};
    out.states = r.states;
    out.initial = 0;
    out.delta.resize(r.states * k);
    out.accepting.resize(r.states);
    for (std::uint32_t i = 0; i < r.states; ++i) {
        std::uint32_t q = order[i];
        out.accepting[i] = r.accepting[q];
        for (std::size_t a = 0; a < k; ++a)
            out.delta[i * k + a] = id[r.delta[q * k + a]];
    }
    return out;
}

}  // namespace

Dfa::Dfa(Alphabet alphabet, std::uint32_t states, std::vector<std::uint32_t> delta,
         std::uint32_t initial, std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)) {
    Raw r{alphabet_, states, std::move(delta), initial, std::move(accepting)};
    if (r.delta.size() != static_cast<std::size_t>(states) * alphabet_.size())
        throw Error("Dfa: transition table has wrong size");
    Raw c = bfs_order(minimize(r));
    states_ = c.states;
    delta_ = std::move(c.delta);
    accepting_ = std::move(c.accepting);
}

bool Dfa::accepts(const Word& w) const { return accepting_[run(0, w)]; }

std::uint32_t Dfa::run(std::uint32_t q, const Word& w) const {
    for (Sym a : w) q = next(q, a);
    return q;
}

bool Dfa::operator==(const Dfa& o) const {
    return states_ == o.states_ && accepting_ == o.accepting_ && delta_ == o.delta_ &&
           alphabet_ == o.alphabet_;
}

std::size_t Dfa::hash() const {
    std::size_t h = states_;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (auto d : delta_) mix(d);
    for (bool b : accepting_) mix(b ? 1 : 2);
    mix(alphabet_.size());
    return h;
}

Dfa determinize_minimize(const Nfa& n) {
    std::size_t k = n.alphabet.size();
    // successor sets per (state, symbol)
    std::vector<std::vector<std::uint32_t>> succ(n.states * k);
    for (auto [p, s, q] : n.transitions) succ[p * k + s].push_back(q);

    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> sets;
    auto intern = [&](std::vector<std::uint32_t> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        auto [it, fresh] = ids.emplace(v, static_cast<std::uint32_t>(sets.size()));
        if (fresh) sets.push_back(it->first);
        return it->second;
    };
    std::vector<std::uint32_t> init(n.initial.begin(), n.initial.end());
    std::uint32_t start = intern(std::move(init));

    std::vector<std::uint32_t> delta;
    std::vector<bool> acc;
    for (std::uint32_t i = 0; i < sets.size(); ++i) {
        const auto set = sets[i];
        bool a = false;
        for (auto q : set)
            if (n.accepting.count(q)) a = true;
        acc.push_back(a);
        for (std::size_t s = 0; s < k; ++s) {
            std::vector<std::uint32_t> nxt;
            for (auto q : set) {
                const auto& v = succ[q * k + s];
                nxt.insert(nxt.end(), v.begin(), v.end());
            }
            delta.push_back(intern(std::move(nxt)));
        }
        // intern may have grown `sets`; delta rows for new sets follow
    }
    return Dfa(n.alphabet, static_cast<std::uint32_t>(sets.size()), std::move(delta),
               start, std::move(acc));
}

namespace {

Dfa product(const Dfa& a, const Dfa& b, bool (*f)(bool, bool)) {
    if (a.alphabet() != b.alphabet())
        throw AlphabetMismatch("boolean: alphabet mismatch");
    std::size_t k = a.alphabet().size();
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    auto intern = [&](std::uint32_t p, std::uint32_t q) {
        auto [it, fresh] = ids.emplace(std::make_pair(p, q),
                                       static_cast<std::uint32_t>(pairs.size()));
        if (fresh) pairs.push_back({p, q});
        return it->second;
    };
    intern(0, 0);
    std::vector<std::uint32_t> delta;
    std::vector<bool> acc;
    for (std::uint32_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        acc.push_back(f(a.accepting(p), b.accepting(q)));
        for (std::size_t s = 0; s < k; ++s)
            delta.push_back(intern(a.next(p, static_cast<Sym>(s)),
                                   b.next(q, static_cast<Sym>(s))));
    }
    return Dfa(a.alphabet(), static_cast<std::uint32_t>(pairs.size()), std::move(delta),
               0, std::move(acc));
}

}  // namespace

Dfa complement(const Dfa& a) {
    std::vector<bool> acc(a.states());
    for (std::uint32_t q = 0; q < a.states(); ++q) acc[q] = !a.accepting(q);
    return Dfa(a.alphabet(), a.states(), a.delta(), 0, std::move(acc));
}

Dfa intersect(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x && y; });
}
Dfa unite(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x || y; });
}
Dfa difference(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x && !y; });
}

Dfa boolean(BoolOp op, const Dfa& a, const Dfa* b) {
    switch (op) {
        case BoolOp::Complement:
            return complement(a);
        case BoolOp::Union:
        case BoolOp::Intersection:
        case BoolOp::Difference:
            if (b == nullptr) throw Error("boolean: missing second operand");
            if (op == BoolOp::Union) return unite(a, *b);
            if (op == BoolOp::Intersection) return intersect(a, *b);
            return difference(a, *b);
    }
    throw Error("boolean: unknown op");
}

Dfa dfa_none(const Alphabet& a) { return determinize_minimize(nfa_none(a)); }
Dfa dfa_all(const Alphabet& a) { return complement(dfa_none(a)); }
Dfa dfa_word(const Alphabet& a, const Word& w) {
    return determinize_minimize(nfa_word(a, w));
}
Dfa dfa_from_words(const Alphabet& a, const std::set<Word>& words) {
    return determinize_minimize(nfa_from_words(a, words));
}

bool is_empty(const Dfa& a) {
    for (std::uint32_t q = 0; q < a.states(); ++q)
        if (a.accepting(q)) return false;  // canonical => all states reachable
    return true;
}

bool is_subset(const Dfa& a, const Dfa& b) { return is_empty(difference(a, b)); }

namespace {

// States from which an accepting state is reachable.
std::vector<bool> coreachable(const Dfa& a) {
    std::size_t k = a.alphabet().size();
    std::vector<std::vector<std::uint32_t>> preds(a.states());
    for (std::uint32_t q = 0; q < a.states(); ++q)
        for (std::size_t s = 0; s < k; ++s) preds[a.next(q, static_cast<Sym>(s))].push_back(q);
    std::vector<bool> co(a.states(), false);
    std::deque<std::uint32_t> todo;
    for (std::uint32_t q = 0; q < a.states(); ++q)
        if (a.accepting(q)) {
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
    return co;
}

}  // namespace

Classification classify(const Dfa& a) {
    std::vector<bool> trim = coreachable(a);
    if (!trim[0]) return {Classification::Empty, {}};
    std::size_t k = a.alphabet().size();
    // cycle in the trim part => infinite (DFS colors)
    std::vector<int> color(a.states(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0u, 0u}};
    color[0] = 1;
    while (!stack.empty()) {
        auto& [q, i] = stack.back();
        if (i == k) {
            color[q] = 2;
            stack.pop_back();
            continue;
        }
        std::uint32_t t = a.next(q, static_cast<Sym>(i++));
        if (!trim[t]) continue;
        if (color[t] == 1) return {Classification::Infinite, {}};
        if (color[t] == 0) {
            color[t] = 1;
            stack.push_back({t, 0});
        }
    }
    // acyclic: enumerate everything (paths are shorter than the state count)
    Classification out{Classification::Finite, {}};
    Word cur;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t q) {
        if (a.accepting(q)) out.words.push_back(cur);
        for (std::size_t s = 0; s < k; ++s) {
            std::uint32_t t = a.next(q, static_cast<Sym>(s));
            if (!trim[t]) continue;
            cur.push_back(static_cast<Sym>(s));
            rec(t);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.words.begin(), out.words.end(), shorter_lex_less);
    return out;
}

std::vector<Word> enumerate_upto(const Dfa& a, std::size_t n) {
    std::size_t k = a.alphabet().size();
    // distance to nearest accepting state, for pruning
    std::vector<std::size_t> dist(a.states(), SIZE_MAX);
    {
        std::vector<std::vector<std::uint32_t>> preds(a.states());
        for (std::uint32_t q = 0; q < a.states(); ++q)
            for (std::size_t s = 0; s < k; ++s)
                preds[a.next(q, static_cast<Sym>(s))].push_back(q);
        std::deque<std::uint32_t> todo;
        for (std::uint32_t q = 0; q < a.states(); ++q)
            if (a.accepting(q)) {
                dist[q] = 0;
                todo.push_back(q);
            }
        while (!todo.empty()) {
            auto q = todo.front();
            todo.pop_front();
            for (auto p : preds[q])
                if (dist[p] == SIZE_MAX) {
                    dist[p] = dist[q] + 1;
                    todo.push_back(p);
                }
        }
    }
    std::vector<Word> out;
    Word cur;
    std::function<void(std::uint32_t, std::size_t)> rec = [&](std::uint32_t q,
                                                              std::size_t len) {
        if (cur.size() == len) {
            if (a.accepting(q)) out.push_back(cur);
            return;
        }
        for (std::size_t s = 0; s < k; ++s) {
            std::uint32_t t = a.next(q, static_cast<Sym>(s));
            if (dist[t] == SIZE_MAX || dist[t] > len - cur.size() - 1) continue;
            cur.push_back(static_cast<Sym>(s));
            rec(t, len);
            cur.pop_back();
        }
    };
    for (std::size_t len = 0; len <= n; ++len) rec(0, len);
    return out;
}

Dfa inverse_homomorphism(const Dfa& a, const Alphabet& gamma,
                         const std::vector<Word>& h) {
    if (h.size() != gamma.size())
        throw Error("inverse_homomorphism: map must cover every letter");
    std::size_t k = gamma.size();
    std::vector<std::uint32_t> delta(a.states() * k);
    for (std::uint32_t q = 0; q < a.states(); ++q)
        for (std::size_t g = 0; g < k; ++g) delta[q * k + g] = a.run(q, h[g]);
    std::vector<bool> acc(a.states());
    for (std::uint32_t q = 0; q < a.states(); ++q) acc[q] = a.accepting(q);
    return Dfa(gamma, a.states(), std::move(delta), 0, std::move(acc));
}

Dfa upward_closure_word(const Word& w, const Alphabet& sigma) {
    std::size_t k = sigma.size();
    std::uint32_t n = static_cast<std::uint32_t>(w.size()) + 1;
    std::vector<std::uint32_t> delta(n * k);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < k; ++s)
            delta[i * k + s] = (i < w.size() && w[i] == s) ? i + 1 : i;
    std::vector<bool> acc(n, false);
    acc[n - 1] = true;
    return Dfa(sigma, n, std::move(delta), 0, std::move(acc));
}

std::optional<Word> least_word_from(const Dfa& a, std::uint32_t from) {
    std::size_t k = a.alphabet().size();
    // BFS exploring symbols in order finds the length-lex least path
    std::vector<bool> seen(a.states(), false);
    std::vector<std::pair<std::uint32_t, Sym>> parent(a.states());
    std::deque<std::uint32_t> todo;
    seen[from] = true;
    todo.push_back(from);
    std::optional<std::uint32_t> hit;
    if (a.accepting(from)) hit = from;
    while (!todo.empty() && !hit) {
        auto q = todo.front();
        todo.pop_front();
        for (std::size_t s = 0; s < k && !hit; ++s) {
            std::uint32_t t = a.next(q, static_cast<Sym>(s));
            if (seen[t]) continue;
            seen[t] = true;
            parent[t] = {q, static_cast<Sym>(s)};
            if (a.accepting(t)) hit = t;
            todo.push_back(t);
        }
    }
    if (!hit) return std::nullopt;
    Word out;
    std::uint32_t q = *hit;
    while (q != from || !out.empty()) {
        if (q == from) break;
        out.push_back(parent[q].second);
        q = parent[q].first;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<Word> least_word(const Dfa& a) { return least_word_from(a, 0); }

}  // namespace subtess
