#include "subtess/nfa.hpp"

#include <algorithm>

#include "subtess/errors.hpp"

namespace subtess {

bool Nfa::accepts_epsilon() const {
    for (auto q : initial)
        if (accepting.count(q)) return true;
    return false;
}

Nfa nfa_none(const Alphabet& a) {
    Nfa n{a};
    n.states = 1;
    n.initial = {0};
    return n;
}

Nfa nfa_epsilon(const Alphabet& a) {
    Nfa n{a};
    n.states = 1;
    n.initial = {0};
    n.accepting = {0};
    return n;
}

Nfa nfa_symbol(const Alphabet& a, Sym s) {
    Nfa n{a};
    n.states = 2;
    n.initial = {0};
    n.accepting = {1};
    n.transitions.insert({0, s, 1});
    return n;
}

Nfa nfa_word(const Alphabet& a, const Word& w) {
    Nfa n{a};
    n.states = static_cast<std::uint32_t>(w.size()) + 1;
    n.initial = {0};
    n.accepting = {n.states - 1};
    for (std::uint32_t i = 0; i < w.size(); ++i)
        n.transitions.insert({i, w[i], i + 1});
    return n;
}

namespace {

// Copies b's structure into a with a state offset, returning the offset.
std::uint32_t append_states(Nfa& a, const Nfa& b) {
    std::uint32_t off = a.states;
    a.states += b.states;
    for (auto [p, s, q] : b.transitions) a.transitions.insert({p + off, s, q + off});
    return off;
}

void check_same_alphabet(const Nfa& a, const Nfa& b) {
    if (a.alphabet != b.alphabet)
        throw AlphabetMismatch("NFA combinator: alphabet mismatch");
}

}  // namespace

Nfa nfa_union(const Nfa& a, const Nfa& b) {
    check_same_alphabet(a, b);
    Nfa n = a;
    std::uint32_t off = append_states(n, b);
    for (auto q : b.initial) n.initial.insert(q + off);
    for (auto q : b.accepting) n.accepting.insert(q + off);
    return n;
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
    check_same_alphabet(a, b);
    Nfa n = a;
    n.accepting.clear();
    std::uint32_t off = append_states(n, b);
    // bridge: accepting states of a take over b's initial moves
    for (auto [p, s, q] : b.transitions) {
        if (b.initial.count(p))
            for (auto f : a.accepting) n.transitions.insert({f, s, q + off});
    }
    for (auto q : b.accepting) n.accepting.insert(q + off);
    if (b.accepts_epsilon())
        for (auto f : a.accepting) n.accepting.insert(f);
    n.initial = a.initial;
    if (a.accepts_epsilon())
        for (auto q : b.initial) n.initial.insert(q + off);
    return n;
}

Nfa nfa_star(const Nfa& a) {
    Nfa n = a;
    std::uint32_t fresh = n.states++;
    // fresh state is the new initial+accepting; it mirrors the old initial
    // moves, and accepting states may restart.
    std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> add;
    for (auto [p, s, q] : a.transitions) {
        if (a.initial.count(p)) {
            add.push_back({fresh, s, q});
            for (auto f : a.accepting) add.push_back({f, s, q});
        }
    }
    for (auto& t : add) n.transitions.insert(t);
    n.initial = {fresh};
    n.accepting.insert(fresh);
    return n;
}

Nfa nfa_plus(const Nfa& a) { return nfa_concat(a, nfa_star(a)); }

Nfa nfa_from_words(const Alphabet& a, const std::set<Word>& words) {
    Nfa n = nfa_none(a);
    for (const Word& w : words) n = nfa_union(n, nfa_word(a, w));
    return n;
}

namespace {

// Recursive-descent regex parser producing epsilon-free NFAs directly.
struct RegexParser {
    std::string_view text;
    std::size_t pos = 0;
    const Alphabet& alphabet;

    explicit RegexParser(std::string_view t, const Alphabet& a)
        : text(t), alphabet(a) {}

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    Nfa parse() {
        if (text.empty()) return nfa_epsilon(alphabet);
        Nfa n = alternation();
        if (!eof()) throw ParseError("regex: unexpected character", pos);
        return n;
    }

    Nfa alternation() {
        Nfa n = concatenation();
        while (!eof() && peek() == '|') {
            ++pos;
            n = nfa_union(n, concatenation());
        }
        return n;
    }

    bool at_atom() const {
        if (eof()) return false;
        char c = peek();
        return c != '|' && c != ')' && c != '*' && c != '+';
    }

    Nfa concatenation() {
        if (!at_atom()) return nfa_epsilon(alphabet);
        Nfa n = repetition();
        while (at_atom()) n = nfa_concat(n, repetition());
        return n;
    }

    Nfa repetition() {
        Nfa n = atom();
        while (!eof() && (peek() == '*' || peek() == '+')) {
            n = (peek() == '*') ? nfa_star(n) : nfa_plus(n);
            ++pos;
        }
        return n;
    }

    bool try_consume(std::string_view s) {
        if (text.substr(pos, s.size()) == s) {
            pos += s.size();
            return true;
        }
        return false;
    }

    Nfa atom() {
        if (eof()) throw ParseError("regex: expected atom", pos);
        if (peek() == '(') {
            std::size_t open = pos++;
            Nfa n = alternation();
            if (eof() || peek() != ')')
                throw ParseError("regex: unbalanced parenthesis", open);
            ++pos;
            return n;
        }
        if (try_consume("ε")) return nfa_epsilon(alphabet);   // ε
        if (try_consume("∅")) return nfa_none(alphabet);      // ∅
        // longest-match literal lookup
        std::size_t best = 0;
        Sym sym = 0;
        for (Sym s = 0; s < alphabet.size(); ++s) {
            const std::string& l = alphabet.label(s);
            if (l.size() > best && text.substr(pos, l.size()) == l) {
                best = l.size();
                sym = s;
            }
        }
        if (best == 0) throw ParseError("regex: symbol not in alphabet", pos);
        pos += best;
        return nfa_symbol(alphabet, sym);
    }
};

}  // namespace

Nfa compile_regex(std::string_view pattern, const Alphabet& a) {
    return RegexParser(pattern, a).parse();
}

}  // namespace subtess
