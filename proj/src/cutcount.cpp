#include "hamcycle/cutcount.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hamcycle/z4conv.hpp"

namespace hamcycle {

namespace {

constexpr CCKey kLow = 0x5555555555555555ull;

CCKey lane_mask(int bag_size) {
  return bag_size >= 32 ? ~CCKey{0} : (CCKey{1} << (2 * bag_size)) - 1;
}

}  // namespace

int CCTable::position(Vertex v) const {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) return -1;
  return static_cast<int>(it - bag.begin());
}

void CCTable::normalize() {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    CCKey k = entries[i].first;
    FieldElem sum = 0;
    for (; i < entries.size() && entries[i].first == k; ++i) sum ^= entries[i].second;
    if (sum) entries[out++] = {k, sum};
  }
  entries.resize(out);
}

std::vector<FieldElem> draw_edge_weights(const Graph& g, const FieldSpec& spec,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FieldElem> w(g.num_edges());
  for (auto& x : w) x = spec.random_elem(rng);
  return w;
}

CCTable cc_leaf() {
  CCTable t;
  t.entries.push_back({0, 1});
  return t;
}

CCTable cc_introduce_vertex(CCTable tbl, Vertex v) {
  auto it = std::lower_bound(tbl.bag.begin(), tbl.bag.end(), v);
  if (it != tbl.bag.end() && *it == v) throw std::logic_error("vertex already in bag");
  const int pos = static_cast<int>(it - tbl.bag.begin());
  tbl.bag.insert(it, v);
  const CCKey low = pos == 0 ? 0 : (CCKey{1} << (2 * pos)) - 1;
  // inserting a zero digit keeps key order
  for (auto& [k, val] : tbl.entries) k = (k & low) | ((k & ~low) << 2);
  return tbl;
}

CCTable cc_introduce_edge(const CCTable& tbl, Edge e, FieldElem weight, Vertex anchor,
                          const FieldSpec& spec) {
  const int pu = tbl.position(e.u), pv = tbl.position(e.v);
  if (pu < 0 || pv < 0) throw std::logic_error("edge endpoint outside bag");
  const bool anchored = e.u == anchor || e.v == anchor;
  CCTable out;
  out.bag = tbl.bag;
  out.entries.reserve(tbl.size() * 2);
  for (const auto& [k, val] : tbl.entries) {
    out.entries.push_back({k, val});
    const CCState su = cc_get(k, pu), sv = cc_get(k, pv);
    if (su == CCState::D2 || sv == CCState::D2) continue;
    const FieldElem wv = spec.mul(weight, val);
    auto emit = [&](CCState nu, CCState nv) {
      out.entries.push_back({cc_set(cc_set(k, pu, nu), pv, nv), wv});
    };
    if (su == CCState::D0 && sv == CCState::D0) {
      emit(CCState::D1L, CCState::D1L);
      if (!anchored) emit(CCState::D1R, CCState::D1R);
    } else if (su == CCState::D0) {
      if (!(e.u == anchor && sv == CCState::D1R)) emit(sv, CCState::D2);
    } else if (sv == CCState::D0) {
      if (!(e.v == anchor && su == CCState::D1R)) emit(CCState::D2, su);
    } else if (su == sv) {
      emit(CCState::D2, CCState::D2);
    }
  }
  out.normalize();
  return out;
}

CCTable cc_forget(const CCTable& tbl, Vertex v) {
  const int pos = tbl.position(v);
  if (pos < 0) throw std::logic_error("forgotten vertex outside bag");
  CCTable out;
  out.bag = tbl.bag;
  out.bag.erase(out.bag.begin() + pos);
  const CCKey low = pos == 0 ? 0 : (CCKey{1} << (2 * pos)) - 1;
  for (const auto& [k, val] : tbl.entries) {
    if (cc_get(k, pos) != CCState::D2) continue;
    out.entries.push_back({(k & low) | ((k >> 2) & ~low), val});
  }
  out.normalize();
  return out;
}

bool cc_combine(CCKey a, CCKey b, int bag_size, CCKey& out) {
  const CCKey lanes = lane_mask(bag_size) & kLow;
  const CCKey nz_a = (a | (a >> 1)) & lanes;
  const CCKey nz_b = (b | (b >> 1)) & lanes;
  const CCKey both = nz_a & nz_b;
  const CCKey d = a ^ b;
  const CCKey differ = (d | (d >> 1)) & lanes;
  const CCKey two_a = (a >> 1) & ~a & lanes;
  if (both & (differ | two_a)) return false;
  const CCKey both2 = both | (both << 1);
  out = ((a | b) & ~both2) | (both << 1);
  return true;
}

CCTable cc_join_naive(const CCTable& a, const CCTable& b, const FieldSpec& spec) {
  if (a.bag != b.bag) throw std::invalid_argument("join of tables with different bags");
  const int m = static_cast<int>(a.bag.size());
  CCTable out;
  out.bag = a.bag;
  for (const auto& [ka, va] : a.entries)
    for (const auto& [kb, vb] : b.entries) {
      CCKey k;
      if (cc_combine(ka, kb, m, k)) out.entries.push_back({k, spec.mul(va, vb)});
    }
  out.normalize();
  return out;
}

CCResult cc_decide(const Graph& g, const NiceDecomposition& nd, const FieldSpec& spec,
                   std::uint64_t seed, JoinKind join, const Deadline* deadline) {
  if (auto bad = validate_nice(g, nd))
    throw std::invalid_argument("invalid nice decomposition: " + *bad);
  const int n = g.num_vertices();
  if (spec.p() < 64 && (std::uint64_t{1} << spec.p()) <= static_cast<std::uint64_t>(n))
    throw std::invalid_argument("field too small for the number of vertices");
  CCResult res;
  if (n < 3 || !g.is_connected()) return res;

  const auto weights = draw_edge_weights(g, spec, seed);
  const Vertex anchor = nd.first_introduced();
  std::vector<CCTable> stack;
  for (const NiceNode& node : nd.nodes) {
    if (deadline) deadline->check();
    switch (node.kind) {
      case NodeKind::Leaf:
        stack.push_back(cc_leaf());
        break;
      case NodeKind::IntroduceVertex:
        stack.back() = cc_introduce_vertex(std::move(stack.back()), node.vertex);
        break;
      case NodeKind::IntroduceEdge:
        stack.back() = cc_introduce_edge(stack.back(), node.edge,
                                         weights[g.edge_index(node.edge.u, node.edge.v)],
                                         anchor, spec);
        break;
      case NodeKind::ForgetVertex:
        stack.back() = cc_forget(stack.back(), node.vertex);
        break;
      case NodeKind::Join: {
        CCTable right = std::move(stack.back());
        stack.pop_back();
        stack.back() = join == JoinKind::Fast ? cc_join_fast(stack.back(), right, spec)
                                              : cc_join_naive(stack.back(), right, spec);
        break;
      }
    }
    res.peak_table = std::max(res.peak_table, stack.back().size());
  }
  const CCTable& root = stack.back();
  res.root_value = root.entries.empty() ? 0 : root.entries.front().second;
  res.hamiltonian = res.root_value != 0;
  return res;
}

}  // namespace hamcycle
