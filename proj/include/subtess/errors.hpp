#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subtess {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error in a regex, formula, or job file; position is a byte offset.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

struct AlphabetMismatch : Error {
    using Error::Error;
};

/// Exceeded an explicit resource guard (variable counts, automaton widths).
struct ResourceLimit : Error {
    using Error::Error;
};

/// The inputs fall outside every decidable case this toolkit implements.
struct UnsupportedTheory : Error {
    using Error::Error;
};

}  // namespace subtess
