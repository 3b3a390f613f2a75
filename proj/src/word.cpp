#include "subtess/word.hpp"

#include <algorithm>

namespace subtess {

std::size_t embed_end(const Word& u, const Word& v) {
    if (u.empty()) return 0;
    std::size_t i = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == u[i]) {
            ++i;
            if (i == u.size()) return j + 1;
        }
    }
    return static_cast<std::size_t>(-1);
}

bool is_subword(const Word& u, const Word& v) {
    return embed_end(u, v) != static_cast<std::size_t>(-1);
}

bool is_cover(const Word& u, const Word& v) {
    return u.size() + 1 == v.size() && is_subword(u, v);
}

bool is_incomparable(const Word& u, const Word& v) {
    return !is_subword(u, v) && !is_subword(v, u);
}

bool is_prefix_maximal(const Word& x, const Word& y) {
    std::size_t e = embed_end(x, y);
    return e != static_cast<std::size_t>(-1) && e == y.size();
}

bool is_primitive(const Word& w) {
    if (w.empty()) throw Error("is_primitive: empty word");
    std::size_t n = w.size();
    // w = r^k for a proper divisor length d iff w is periodic with period d.
    for (std::size_t d = 1; d * 2 <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            periodic = (w[i] == w[i - d]);
        if (periodic) return false;
    }
    return true;
}

Word primitive_root(const Word& w) {
    if (w.empty()) throw Error("primitive_root: empty word");
    std::size_t n = w.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            periodic = (w[i] == w[i - d]);
        if (periodic) return Word(w.begin(), w.begin() + d);
    }
    return w;
}

std::set<Word> subwords_of(const Word& w) {
    std::set<Word> out;
    out.insert(Word{});
    for (Sym a : w) {
        // append a to every subword of the processed prefix
        std::set<Word> next = out;
        for (const Word& s : out) {
            Word t = s;
            t.push_back(a);
            next.insert(std::move(t));
        }
        out = std::move(next);
    }
    return out;
}

bool shorter_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Word word_power(const Word& w, std::size_t k) {
    Word out;
    out.reserve(w.size() * k);
    for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

Word word_concat(std::initializer_list<Word> parts) {
    Word out;
    for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace subtess
