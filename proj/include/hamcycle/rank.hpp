#pragma once

#include <map>
#include <vector>

#include "hamcycle/matchings.hpp"
#include "hamcycle/naive.hpp"

namespace hamcycle {

enum class RankVariant { Cut4t, Improved };

/// Which trigger decides when a bucket is reduced.
enum class TriggerStyle {
  Auto,   // tau for bags up to width_switch vertices, alpha above
  Tau,    // absolute count per open-end count l
  Alpha,  // count >= alpha * 2^(l/2-1)
};

struct ReducePolicy {
  RankVariant kind = RankVariant::Improved;
  TriggerStyle style = TriggerStyle::Auto;
  std::map<int, double> tau{{4, 3}, {6, 5}, {8, 9}};  // l without an entry falls back to alpha
  double alpha = 2.0;
  int width_switch = 9;

  /// Defaults tuned per variant: alpha 8 for cut vectors, 2 for the basis vectors.
  static ReducePolicy defaults(RankVariant kind);
  /// Throws std::invalid_argument on tau < 1 or alpha <= 0.
  void validate() const;
  bool triggered(std::size_t count, int l, int bag_size) const;
};

/// Longest pairing the cut-vector variant will reduce; larger buckets are kept.
inline constexpr int kCutVectorCap = 20;

/// Reduces a family of pairings sharing one bucket. Returns the indices of
/// the survivors in ascending order (all indices when the trigger does not
/// fire or l is outside the supported range).
std::vector<std::size_t> reduce_bucket(const std::vector<Matching>& family,
                                       const ReducePolicy& policy, int bag_size);

/// Pairing of a state as a matching on its degree-1 positions, in bag order.
Matching state_matching(const State& s, int bag_size);

SolveResult solve_rank(const Graph& g, const NiceDecomposition& nd, const ReducePolicy& policy,
                       const SolveOptions& opts = {});

}  // namespace hamcycle
