#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamcycle {

/// Vertex identifiers are 1-based at every public interface.
using Vertex = int;

/// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  Vertex other(Vertex x) const { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 1..n. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Parallel edges are merged; when
  /// `duplicates` is non-null it receives the number of merged duplicates.
  /// Self-loops and out-of-range endpoints throw GraphError.
  Graph(int n, std::span<const Edge> edges, std::size_t* duplicates = nullptr);
  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  /// Sorted, deduplicated edge list.
  const std::vector<Edge>& edges() const { return edges_; }

  /// Sorted neighbors of v.
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v - 1]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v - 1].size()); }
  int max_degree() const;

  bool has_edge(Vertex a, Vertex b) const;
  /// Index of the edge in edges(), or -1.
  int edge_index(Vertex a, Vertex b) const;

  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

struct GraphStats {
  int n = 0;
  std::size_t m = 0;
  int min_deg = 0;
  double avg_deg = 0.0;
  int max_deg = 0;
  int girth = 0;     // 0 when acyclic
  int diameter = 0;  // over the largest connected component
};

GraphStats stats(const Graph& g);

/// Returns g without the listed edges. Every pair must be an edge of g.
Graph delete_edges(const Graph& g, std::span<const Edge> removed);

/// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

}  // namespace hamcycle
