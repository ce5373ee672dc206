#pragma once

#include <cstdint>

#include "hamcycle/decomposition.hpp"
#include "hamcycle/extraction.hpp"
#include "hamcycle/graph.hpp"

namespace hamcycle {

/// a rows (a = 2 mod 4), b columns, chord probability p, seed.
struct GenParams {
  int a = 6;
  int b = 4;
  double p = 0.5;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless a > 0, a % 4 == 2, b >= 1, a*b >= 3,
  /// 0 <= p <= 1.
  void validate() const;
};

struct GeneratedInstance {
  Graph graph;
  CyclePath planted_cycle;
  TreeDecomposition td;       // path of bags, width <= a
  std::size_t chords_drawn = 0;  // Bernoulli successes, before merging with base edges
};

/// Vertex (i, j) with row i in 1..a and column j in 1..b gets id (i-1)*b + j.
inline Vertex grid_vertex(int b, int i, int j) { return (i - 1) * b + j; }

GeneratedInstance generate(const GenParams& params);

struct ExpectedParams {
  int n = 0;
  double edges = 0;    // a*b + p*b*C(a/2, 2)
  double density = 0;  // edges / C(n, 2)
};

ExpectedParams expected_params_report(const GenParams& params);

}  // namespace hamcycle
