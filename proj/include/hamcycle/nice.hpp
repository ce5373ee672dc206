#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hamcycle/decomposition.hpp"
#include "hamcycle/graph.hpp"

namespace hamcycle {

enum class NodeKind { Leaf, IntroduceVertex, IntroduceEdge, ForgetVertex, Join };

const char* to_string(NodeKind k);

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  Vertex vertex = 0;   // IntroduceVertex / ForgetVertex
  Edge edge;           // IntroduceEdge
  std::vector<Vertex> bag;  // sorted
  int subtree_vertices = 0;  // |vertices appearing in the subtree|
  std::array<int, 2> children{-1, -1};
};

/// Rooted nice decomposition with introduce-edge nodes. Nodes are stored in
/// post-order, so children always precede their parent and the root is last.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int width() const;
  std::size_t count(NodeKind k) const;
  /// First vertex introduced in post-order, or 0 if none.
  Vertex first_introduced() const;
};

/// Converts a valid tree decomposition. Throws std::invalid_argument when
/// validate_td rejects the input.
NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td);

/// Checks every structural invariant: typed node transitions, empty leaf and
/// root bags, one IntroduceEdge per graph edge with both ends in the bag,
/// edges introduced directly below the forget of one endpoint, identical bags
/// at joins, post-order layout and subtree vertex counts. Returns a
/// description of the first violation, or nullopt.
std::optional<std::string> validate_nice(const Graph& g, const NiceDecomposition& nd);

}  // namespace hamcycle
