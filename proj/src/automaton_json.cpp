#include "subtess/automaton_json.hpp"

#include <json.hpp>

namespace subtess {

namespace {

using nlohmann::ordered_json;

ordered_json to_json_impl(const Alphabet& alphabet, std::uint32_t states,
                          const std::set<std::uint32_t>& initial,
                          const std::set<std::uint32_t>& accepting,
                          const std::set<std::tuple<std::uint32_t, Sym, std::uint32_t>>& trans) {
    ordered_json j;
    j["alphabet"] = alphabet.labels();
    j["states"] = states;
    j["initial"] = initial;
    j["accepting"] = accepting;
    auto ts = ordered_json::array();
    for (auto [p, s, q] : trans)  // std::set order: sorted by (from, sym, to)
        ts.push_back(ordered_json::array({p, alphabet.label(s), q}));
    j["transitions"] = std::move(ts);
    return j;
}

}  // namespace

std::string automaton_to_json(const Nfa& a) {
    return to_json_impl(a.alphabet, a.states, a.initial, a.accepting, a.transitions)
        .dump();
}

std::string automaton_to_json(const Dfa& a) {
    std::set<std::tuple<std::uint32_t, Sym, std::uint32_t>> trans;
    for (std::uint32_t q = 0; q < a.states(); ++q)
        for (Sym s = 0; s < a.alphabet().size(); ++s)
            trans.insert({q, s, a.next(q, s)});
    std::set<std::uint32_t> acc;
    for (std::uint32_t q = 0; q < a.states(); ++q)
        if (a.accepting(q)) acc.insert(q);
    return to_json_impl(a.alphabet(), a.states(), {0}, acc, trans).dump();
}

Nfa automaton_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Nfa n{Alphabet(j.at("alphabet").get<std::vector<std::string>>())};
    n.states = j.at("states").get<std::uint32_t>();
    for (auto q : j.at("initial")) {
        std::uint32_t s = q.get<std::uint32_t>();
        if (s >= n.states) throw Error("automaton json: initial state out of range");
        n.initial.insert(s);
    }
    for (auto q : j.at("accepting")) {
        std::uint32_t s = q.get<std::uint32_t>();
        if (s >= n.states) throw Error("automaton json: accepting state out of range");
        n.accepting.insert(s);
    }
    for (auto& t : j.at("transitions")) {
        std::uint32_t p = t.at(0).get<std::uint32_t>();
        Sym s = n.alphabet.require(t.at(1).get<std::string>());
        std::uint32_t q = t.at(2).get<std::uint32_t>();
        if (p >= n.states || q >= n.states)
            throw Error("automaton json: transition state out of range");
        n.transitions.insert({p, s, q});
    }
    return n;
}

}  // namespace subtess
