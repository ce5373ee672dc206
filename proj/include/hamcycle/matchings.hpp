#pragma once

#include <cstdint>
#include <vector>

#include "hamcycle/f2.hpp"

namespace hamcycle {

/// Perfect matching on {0..l-1} as a partner array: m[i] is i's mate.
using Matching = std::vector<std::uint8_t>;

/// Builds a matching from pairs; throws std::invalid_argument unless the
/// pairs form a perfect matching on {0..l-1}.
Matching make_matching(int l, const std::vector<std::pair<int, int>>& pairs);

/// True iff the multigraph E ∪ M is a single cycle through all points.
/// Throws std::invalid_argument when the ground sets differ.
bool is_single_cycle(const Matching& e, const Matching& m);

/// All (l-1)!! perfect matchings of {0..l-1}, in the order obtained by
/// pairing the smallest free point with each larger free point in turn.
std::vector<Matching> enumerate_matchings(int l);

/// Consistent-cut vector: one coordinate per bipartition of {0..l-1} with 0
/// on the left side (bit j-1 of the index gives the side of point j); the
/// entry is 1 iff no pair of `e` crosses the bipartition.
BitRow cut_vector(const Matching& e);

/// A family of 2^(l/2-1) matchings whose rows of the single-cycle matrix are
/// independent and span its row space.
struct BasisFamily {
  int l = 0;
  std::vector<Matching> matchings;
};

/// Largest l accepted by compute_basis.
inline constexpr int kBasisCap = 14;

/// Cached, deterministic. Throws std::invalid_argument for odd l or l > kBasisCap.
const BasisFamily& compute_basis(int l);

/// Row i is is_single_cycle(e, basis.matchings[i]).
BitRow improved_vector(const Matching& e, const BasisFamily& basis);

/// Rank over F2 of the full (l-1)!! x (l-1)!! single-cycle matrix.
std::size_t single_cycle_rank(int l);

}  // namespace hamcycle
