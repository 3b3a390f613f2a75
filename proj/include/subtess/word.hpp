#pragma once

#include <cstddef>
#include <set>

#include "subtess/alphabet.hpp"

namespace subtess {

/// End position (exclusive) of the greedy leftmost embedding of u into v,
/// or SIZE_MAX if u is not a subword of v. The greedy end is minimal over
/// all embeddings.
std::size_t embed_end(const Word& u, const Word& v);

/// u is a (scattered) subword of v.
bool is_subword(const Word& u, const Word& v);

/// v covers u: u is a subword of v and |u|+1 = |v|.
bool is_cover(const Word& u, const Word& v);

/// Neither word is a subword of the other.
bool is_incomparable(const Word& u, const Word& v);

/// x is a prefix-maximal subword of y: x is a subword but no xa is.
bool is_prefix_maximal(const Word& x, const Word& y);

/// w is not a proper power of a shorter word. Requires w nonempty.
bool is_primitive(const Word& w);

/// Shortest r with w = r^k. Requires w nonempty.
Word primitive_root(const Word& w);

/// All distinct subwords of w (including the empty word and w itself).
std::set<Word> subwords_of(const Word& w);

/// Length-then-lexicographic comparison (the enumeration order used
/// throughout).
bool shorter_lex_less(const Word& a, const Word& b);

Word word_power(const Word& w, std::size_t k);
Word word_concat(std::initializer_list<Word> parts);

}  // namespace subtess
