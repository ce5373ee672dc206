#include "hamcycle/rank.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hamcycle {

ReducePolicy ReducePolicy::defaults(RankVariant kind) {
  ReducePolicy p;
  p.kind = kind;
  p.alpha = kind == RankVariant::Cut4t ? 8.0 : 2.0;
  return p;
}

void ReducePolicy::validate() const {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  for (auto [l, t] : tau)
    if (t < 1) throw std::invalid_argument("tau must be at least 1");
}

bool ReducePolicy::triggered(std::size_t count, int l, int bag_size) const {
  bool use_tau = style == TriggerStyle::Tau ||
                 (style == TriggerStyle::Auto && bag_size <= width_switch);
  if (use_tau)
    if (auto it = tau.find(l); it != tau.end())
      return static_cast<double>(count) >= it->second;
  return static_cast<double>(count) >= alpha * std::ldexp(1.0, l / 2 - 1);
}

std::vector<std::size_t> reduce_bucket(const std::vector<Matching>& family,
                                       const ReducePolicy& policy, int bag_size) {
  std::vector<std::size_t> all(family.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (family.empty()) return all;
  const int l = static_cast<int>(family.front().size());
  if (l <= 2) return all;
  const bool cut = policy.kind == RankVariant::Cut4t;
  if (cut ? l > kCutVectorCap : l > kBasisCap) return all;
  if (!policy.triggered(family.size(), l, bag_size)) return all;

  const BasisFamily* basis = cut ? nullptr : &compute_basis(l);
  const std::size_t cols = cut ? std::size_t{1} << (l - 1) : basis->matchings.size();
  F2Basis elim;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < family.size() && elim.rank() < cols; ++i) {
    BitRow row = cut ? cut_vector(family[i]) : improved_vector(family[i], *basis);
    if (elim.insert(std::move(row))) kept.push_back(i);
  }
  return kept;
}

Matching state_matching(const State& s, int bag_size) {
  std::array<int, kMaxBag> index{};
  int l = 0;
  for (int i = 0; i < bag_size; ++i)
    if (s.deg(i) == 1) index[i] = l++;
  Matching m(l);
  for (int i = 0; i < bag_size; ++i)
    if (s.deg(i) == 1) m[index[i]] = static_cast<std::uint8_t>(index[s.partner[i]]);
  return m;
}

SolveResult solve_rank(const Graph& g, const NiceDecomposition& nd, const ReducePolicy& policy,
                       const SolveOptions& opts) {
  policy.validate();
  auto reducer = [&policy](PartialTable& tbl) {
    const int k = static_cast<int>(tbl.bag.size());
    const bool witnesses = !tbl.witness.empty();
    PartialTable out;
    out.bag = tbl.bag;
    // dedupe leaves states sorted, so buckets are contiguous
    for (std::size_t lo = 0; lo < tbl.size();) {
      std::size_t hi = lo;
      while (hi < tbl.size() && tbl.states[hi].degrees == tbl.states[lo].degrees) ++hi;
      std::vector<Matching> fam;
      fam.reserve(hi - lo);
      for (std::size_t i = lo; i < hi; ++i) fam.push_back(state_matching(tbl.states[i], k));
      for (std::size_t idx : reduce_bucket(fam, policy, k)) {
        out.states.push_back(tbl.states[lo + idx]);
        if (witnesses) out.witness.push_back(tbl.witness[lo + idx]);
      }
      lo = hi;
    }
    tbl = std::move(out);
  };
  return run_path_dp(g, nd, opts, reducer);
}

}  // namespace hamcycle
