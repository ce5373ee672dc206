#include "hamcycle/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hamcycle {

namespace {

// reach[mask] = end vertices of paths that start at vertex 0 and visit
// exactly the vertices of mask (0-based bits)
std::vector<std::uint32_t> subset_table(const Graph& g, std::vector<std::uint32_t>& nbr) {
  const int n = g.num_vertices();
  if (n > kOracleCap) throw std::invalid_argument("oracle limited to 20 vertices");
  nbr.assign(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u - 1] |= 1u << (e.v - 1);
    nbr[e.v - 1] |= 1u << (e.u - 1);
  }
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  if (n == 0) return reach;
  reach[1] = 1;
  for (std::uint32_t mask = 1; mask < reach.size(); mask += 2) {
    for (std::uint32_t ends = reach[mask]; ends; ends &= ends - 1) {
      int v = std::countr_zero(ends);
      for (std::uint32_t next = nbr[v] & ~mask; next; next &= next - 1) {
        int w = std::countr_zero(next);
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return reach;
}

}  // namespace

bool brute_force_decide(const Graph& g) { return brute_force_cycle(g).has_value(); }

std::optional<CyclePath> brute_force_cycle(const Graph& g) {
  const int n = g.num_vertices();
  if (n > kOracleCap) throw std::invalid_argument("oracle limited to 20 vertices");
  if (n < 3) return std::nullopt;
  std::vector<std::uint32_t> nbr;
  auto reach = subset_table(g, nbr);
  std::uint32_t mask = (1u << n) - 1;
  std::uint32_t closers = reach[mask] & nbr[0];
  if (!closers) return std::nullopt;
  int v = std::countr_zero(closers);
  CyclePath c;
  while (mask != 1u) {
    c.vertices.push_back(v + 1);
    std::uint32_t rest = mask & ~(1u << v);
    std::uint32_t prev = reach[rest] & nbr[v];
    v = std::countr_zero(prev);
    mask = rest;
  }
  c.vertices.push_back(1);
  return c;
}

}  // namespace hamcycle
