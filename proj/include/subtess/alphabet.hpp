#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subtess/errors.hpp"

namespace subtess {

using Sym = std::uint32_t;
using Word = std::vector<Sym>;

/// Ordered alphabet of distinct string labels. Base letters are single
/// characters; derived alphabets use tagged labels like "a#1". The order is
/// total and stable and is used for lexicographic tie-breaking everywhere.
/// Cheap to copy (shared immutable payload).
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> labels);

    /// One single-character label per byte of `chars`, in the given order.
    static Alphabet letters(std::string_view chars);

    std::size_t size() const { return data_->labels.size(); }
    const std::string& label(Sym s) const { return data_->labels.at(s); }
    const std::vector<std::string>& labels() const { return data_->labels; }

    std::optional<Sym> find(std::string_view label) const;
    Sym require(std::string_view label) const;

    /// Same labels with `suffix` appended to each (derived alphabets).
    Alphabet tagged(std::string_view suffix) const;

    bool operator==(const Alphabet& o) const;
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    struct Data {
        std::vector<std::string> labels;
        std::map<std::string, Sym, std::less<>> index;
    };
    std::shared_ptr<const Data> data_;
};

std::string word_to_string(const Alphabet& a, const Word& w);

/// Parses a word letter-by-letter; requires all labels to be single bytes.
Word parse_word(const Alphabet& a, std::string_view text);

}  // namespace subtess
