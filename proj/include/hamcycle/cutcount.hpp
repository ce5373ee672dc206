#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hamcycle/dp_table.hpp"
#include "hamcycle/gf2p.hpp"
#include "hamcycle/graph.hpp"
#include "hamcycle/nice.hpp"

namespace hamcycle {

/// Per-vertex Cut&Count state. The code doubles as a Z4 digit: opposite-side
/// ends sum to 0 and equal-side ends sum to D2.
enum class CCState : std::uint8_t { D0 = 0, D1L = 1, D2 = 2, D1R = 3 };

/// Two bits per bag position, position i at bits 2i..2i+1.
using CCKey = std::uint64_t;

inline CCState cc_get(CCKey k, int pos) { return static_cast<CCState>((k >> (2 * pos)) & 3u); }
inline CCKey cc_set(CCKey k, int pos, CCState s) {
  return (k & ~(CCKey{3} << (2 * pos))) | (static_cast<CCKey>(s) << (2 * pos));
}

/// Sparse accumulator table sorted by key; zero values are never stored.
struct CCTable {
  std::vector<Vertex> bag;  // sorted
  std::vector<std::pair<CCKey, FieldElem>> entries;

  std::size_t size() const { return entries.size(); }
  int position(Vertex v) const;
  /// Sorts by key, adds values of equal keys, drops zeros.
  void normalize();
};

/// One weight per edge, indexed like Graph::edges(), drawn from `seed`.
std::vector<FieldElem> draw_edge_weights(const Graph& g, const FieldSpec& spec,
                                         std::uint64_t seed);

CCTable cc_leaf();
CCTable cc_introduce_vertex(CCTable tbl, Vertex v);
/// `anchor` is the vertex that may only ever take side L.
CCTable cc_introduce_edge(const CCTable& tbl, Edge e, FieldElem weight, Vertex anchor,
                          const FieldSpec& spec);
CCTable cc_forget(const CCTable& tbl, Vertex v);
CCTable cc_join_naive(const CCTable& a, const CCTable& b, const FieldSpec& spec);

/// Combines two keys coordinate-wise; false when some coordinate clashes.
bool cc_combine(CCKey a, CCKey b, int bag_size, CCKey& out);

enum class JoinKind { Naive, Fast };

struct CCResult {
  bool hamiltonian = false;
  FieldElem root_value = 0;
  std::size_t peak_table = 0;
};

/// Randomized decision; a "yes" is always correct. Throws std::invalid_argument
/// when 2^p <= n or the decomposition is invalid.
CCResult cc_decide(const Graph& g, const NiceDecomposition& nd, const FieldSpec& spec,
                   std::uint64_t seed, JoinKind join = JoinKind::Naive,
                   const Deadline* deadline = nullptr);

}  // namespace hamcycle
