#pragma once

#include <cstdint>

#include "subtess/dfa.hpp"

namespace subtess {

/// Unambiguous rational relation in Nivat form: a regular witness language
/// S over gamma plus two per-letter word maps into sigma. The pair set is
/// {(h1(w), h2(w)) : w in S}; unambiguity (injectivity of that map on S) is
/// a checked property, not assumed.
///
/// No gamma-letter may have h1 and h2 both empty; every witness for a pair
/// (u,v) then has length at most |u|+|v|, which makes membership counting
/// terminate.
struct NivatPresentation {
    Alphabet sigma;
    Alphabet gamma;
    Dfa s;
    std::vector<Word> h1;  // per gamma letter, over sigma
    std::vector<Word> h2;

    /// Throws if the no-(ε,ε)-letter invariant or map arities are violated.
    void validate() const;
};

struct SubwordRelations {
    NivatPresentation subword;             // ⊑
    NivatPresentation cover;               // ⊏· (exactly one surplus track-2 letter)
    NivatPresentation proper_minus_cover;  // ⊏ minus ⊏· (two or more surplus)
};

/// The track-tagged witness language for the subword relation and its
/// cover / proper-non-cover refinements.
SubwordRelations subword_relations(const Alphabet& sigma);

/// Incomparability as the disjoint union of the shorter-left part, the
/// equal-length part, and the inverse of the shorter-left part.
NivatPresentation incomparability(const Alphabet& sigma);

/// The three parts, exposed separately (useful for the union tests).
NivatPresentation inc_equal_length(const Alphabet& sigma);  // |u| = |v|, u != v
NivatPresentation inc_shorter_left(const Alphabet& sigma);  // |u| < |v|, u not ⊑ v

NivatPresentation inverse(const NivatPresentation& r);
NivatPresentation disjoint_union(const NivatPresentation& r1,
                                 const NivatPresentation& r2);
NivatPresentation restrict_range(const NivatPresentation& r, const Dfa& l);

/// Number of witnesses w in S with (h1(w), h2(w)) = (u, v).
std::uint64_t contains(const NivatPresentation& r, const Word& u, const Word& v);

struct UnambiguityReport {
    bool ok = true;
    Word u, v;                 // first counterexample in length-lex order
    std::uint64_t parses = 0;  // its witness count
};

/// Exhaustively checks contains(r,u,v) <= 1 for all u,v over sigma with
/// length at most n.
UnambiguityReport check_unambiguous_upto(const NivatPresentation& r, std::size_t n);

}  // namespace subtess
