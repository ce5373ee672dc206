#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hamcycle/decomposition.hpp"
#include "hamcycle/graph.hpp"

namespace hamcycle {

/// Ordered vertex sequence: a simple path, or a cycle with the closing edge implied.
struct CyclePath {
  std::vector<Vertex> vertices;

  std::vector<Edge> path_edges() const;
  std::vector<Edge> cycle_edges() const;
  friend bool operator==(const CyclePath&, const CyclePath&) = default;
};

/// True iff c visits every vertex of g once and consecutive vertices
/// (cyclically) are adjacent.
bool verify_cycle(const Graph& g, const CyclePath& c);

/// Drops every edge at an internal vertex of p other than its two path
/// edges. Throws std::invalid_argument unless p is a path in g with >= 2 edges.
Graph restrict_for_path(const Graph& g, const CyclePath& p);

/// Orders an edge set forming one spanning cycle on 1..n, starting at 1 and
/// continuing to its smaller neighbor. Throws std::invalid_argument otherwise.
CyclePath extract_from_witness(const std::vector<Edge>& edges, int n);

using DecisionFn = std::function<bool(const Graph&, const TreeDecomposition&)>;

enum class ExtractStatus {
  Found,
  NotHamiltonian,  // the first call on the input answered no
  Inconsistent,    // the answers contradicted each other on every attempt
};

struct ExtractionResult {
  ExtractStatus status = ExtractStatus::Inconsistent;
  CyclePath cycle;
  std::size_t calls = 0;  // over all attempts
  int attempts = 0;
};

/// Finds a Hamiltonian cycle edge by edge using only yes/no answers. Each
/// answer is taken on a subgraph of g, for which td stays valid. When the
/// answers turn out inconsistent the search restarts, up to `attempts` times.
ExtractionResult extract_self_reduce(const Graph& g, const TreeDecomposition& td,
                                     const DecisionFn& decide, int attempts = 2);

}  // namespace hamcycle
