#include "hamcycle/naive.hpp"

#include <stdexcept>

namespace hamcycle {

SolveResult run_path_dp(const Graph& g, const NiceDecomposition& nd,
                        const SolveOptions& opts, const TableReducer& reduce) {
  if (auto bad = validate_nice(g, nd))
    throw std::invalid_argument("invalid nice decomposition: " + *bad);
  SolveResult result;
  if (g.num_vertices() < 3 || !g.is_connected()) return result;

  DpContext ctx;
  ctx.n = g.num_vertices();
  ctx.keep_witnesses = opts.mode == SolveMode::Witness;

  std::vector<PartialTable> stack;
  for (const NiceNode& node : nd.nodes) {
    if (opts.deadline) opts.deadline->check();
    switch (node.kind) {
      case NodeKind::Leaf:
        stack.push_back(transition_leaf(ctx));
        break;
      case NodeKind::IntroduceVertex:
        stack.back() = transition_introduce_vertex(std::move(stack.back()), node.vertex);
        break;
      case NodeKind::IntroduceEdge:
        stack.back() = transition_introduce_edge(stack.back(), node.edge,
                                                 node.subtree_vertices, ctx);
        break;
      case NodeKind::ForgetVertex:
        stack.back() = transition_forget(std::move(stack.back()), node.vertex);
        break;
      case NodeKind::Join: {
        PartialTable right = std::move(stack.back());
        stack.pop_back();
        stack.back() = transition_join(stack.back(), right, node.subtree_vertices, ctx);
        break;
      }
    }
    if (ctx.found) break;
    PartialTable& top = stack.back();
    if (reduce) reduce(top);
    result.peak_table = std::max(result.peak_table, top.size());
    if (opts.verify_witnesses && ctx.keep_witnesses)
      for (std::size_t i = 0; i < top.size(); ++i)
        if (auto bad = check_witness(top, i, ctx.arena, node.subtree_vertices))
          throw std::logic_error("witness check failed: " + *bad);
  }
  result.hamiltonian = ctx.found;
  if (ctx.found) result.cycle = std::move(ctx.cycle);
  return result;
}

SolveResult solve_naive(const Graph& g, const NiceDecomposition& nd,
                        const SolveOptions& opts) {
  return run_path_dp(g, nd, opts);
}

std::uint64_t count_pairings(int l) {
  if (l < 0 || l % 2 != 0)
    throw std::invalid_argument("pairings need an even, non-negative ground set");
  std::uint64_t c = 1;
  for (int k = l - 1; k > 1; k -= 2) c *= static_cast<std::uint64_t>(k);
  return c;
}

}  // namespace hamcycle
