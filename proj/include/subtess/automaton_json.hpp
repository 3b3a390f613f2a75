#pragma once

#include <string>

#include "subtess/dfa.hpp"

namespace subtess {

/// JSON automaton exchange format:
/// {"alphabet":[...], "states":N, "initial":[...], "accepting":[...],
///  "transitions":[[from,"sym",to],...]}
/// Serialization is deterministic (sorted transitions).
std::string automaton_to_json(const Nfa& a);
std::string automaton_to_json(const Dfa& a);

Nfa automaton_from_json(const std::string& text);

}  // namespace subtess
