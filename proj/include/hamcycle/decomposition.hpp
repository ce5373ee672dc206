#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamcycle/graph.hpp"

namespace hamcycle {

/// Unrooted tree decomposition. Node ids are 0-based indices into `bags`;
/// the PACE file format shifts them to 1-based.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each sorted
  std::vector<std::pair<int, int>> tree_edges;

  std::size_t num_nodes() const { return bags.size(); }
  /// Largest bag size minus one; -1 for a decomposition without vertices.
  int width() const;
  std::size_t max_bag_size() const;

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

struct TdCheck {
  bool valid = false;
  int width = -1;
  std::string violation;  // empty when valid

  explicit operator bool() const { return valid; }
};

/// Exact check of tree-ness, vertex coverage with connected occurrence sets,
/// and edge coverage. Never throws.
TdCheck validate_td(const Graph& g, const TreeDecomposition& td);

/// Minimum fill-in elimination order. Ties are broken by smaller current
/// degree, then smaller vertex id; a nonzero seed instead picks uniformly
/// among the (fill, degree) ties.
std::vector<Vertex> min_fill_order(const Graph& g, std::uint64_t tie_break_seed = 0);

/// Same as min_fill_order but gives up (nullopt) as soon as eliminating a
/// vertex would create a bag wider than `width_cap`.
std::optional<std::vector<Vertex>> min_fill_order_capped(
    const Graph& g, int width_cap, std::uint64_t tie_break_seed = 0);

/// Standard elimination-order construction. Throws std::invalid_argument if
/// `order` is not a permutation of 1..n.
TreeDecomposition order_to_td(const Graph& g, const std::vector<Vertex>& order);

/// Convenience: order_to_td(g, min_fill_order(g)).
TreeDecomposition min_fill_decomposition(const Graph& g);

/// PACE .td reader/writer. Throws ParseError on malformed input.
TreeDecomposition parse_td(std::istream& in, int* n_out = nullptr);
TreeDecomposition parse_td_file(const std::string& path, int* n_out = nullptr);
void write_td(std::ostream& out, const TreeDecomposition& td, int n);

}  // namespace hamcycle
