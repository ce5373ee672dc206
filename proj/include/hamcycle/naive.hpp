#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hamcycle/dp_table.hpp"
#include "hamcycle/graph.hpp"
#include "hamcycle/nice.hpp"

namespace hamcycle {

/// Decision keeps only the "found" flag; Witness stores one partial solution
/// per state so the cycle can be returned directly.
enum class SolveMode { Decision, Witness };

struct SolveOptions {
  SolveMode mode = SolveMode::Witness;
  const Deadline* deadline = nullptr;
  /// Re-check every stored witness against its state after each node.
  bool verify_witnesses = false;
};

struct SolveResult {
  bool hamiltonian = false;
  std::vector<Edge> cycle;  // witness mode and hamiltonian only
  std::size_t peak_table = 0;
};

/// Hook applied to every table right after it is computed.
using TableReducer = std::function<void(PartialTable&)>;

/// Runs the path-system DP bottom-up over `nd`. Graphs with n < 3 and
/// disconnected graphs are answered "no" without running the DP. Throws
/// std::invalid_argument when `nd` does not validate against `g`.
SolveResult run_path_dp(const Graph& g, const NiceDecomposition& nd,
                        const SolveOptions& opts, const TableReducer& reduce = {});

SolveResult solve_naive(const Graph& g, const NiceDecomposition& nd,
                        const SolveOptions& opts = {});

/// Number of perfect matchings on ℓ points, (ℓ-1)!!. Throws on odd ℓ.
std::uint64_t count_pairings(int l);

}  // namespace hamcycle
