#pragma once

#include <optional>

#include "hamcycle/extraction.hpp"
#include "hamcycle/graph.hpp"

namespace hamcycle {

/// Largest vertex count accepted by the subset oracles.
inline constexpr int kOracleCap = 20;

/// Exact Hamiltonicity by dynamic programming over vertex subsets.
/// Throws std::invalid_argument when n exceeds kOracleCap.
bool brute_force_decide(const Graph& g);
std::optional<CyclePath> brute_force_cycle(const Graph& g);

}  // namespace hamcycle
