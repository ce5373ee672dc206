#include "hamcycle/dp_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hamcycle {

namespace {

constexpr std::uint64_t kLowBits = 0x5555555555555555ull;
constexpr std::uint64_t kHighBits = 0xAAAAAAAAAAAAAAAAull;

// Some position would exceed degree 2 when the buckets are added.
bool degrees_clash(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t nz_a = (a | (a >> 1)) & kLowBits;
  const std::uint64_t nz_b = (b | (b >> 1)) & kLowBits;
  const std::uint64_t two_a = (a & kHighBits) >> 1;
  const std::uint64_t two_b = (b & kHighBits) >> 1;
  return ((two_a & nz_b) | (two_b & nz_a)) != 0;
}

}  // namespace

int State::open_ends(int bag_size) const {
  int l = 0;
  for (int i = 0; i < bag_size; ++i) l += deg(i) == 1;
  return l;
}

WitnessArena::Id WitnessArena::add_edge(Id parent, Edge e) {
  nodes_.push_back({parent, -1, e});
  return static_cast<Id>(nodes_.size() - 1);
}

WitnessArena::Id WitnessArena::merge(Id a, Id b) {
  if (a == kEmpty) return b;
  if (b == kEmpty) return a;
  nodes_.push_back({a, b, Edge{}});
  return static_cast<Id>(nodes_.size() - 1);
}

std::vector<Edge> WitnessArena::collect(Id id) const {
  std::vector<Edge> out;
  std::vector<Id> stack;
  if (id != kEmpty) stack.push_back(id);
  while (!stack.empty()) {
    Id x = stack.back();
    stack.pop_back();
    const Node& nd = nodes_[x];
    if (nd.right < 0) {
      out.push_back(nd.edge);
      if (nd.left != kEmpty) stack.push_back(nd.left);
    } else {
      stack.push_back(nd.left);
      stack.push_back(nd.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int PartialTable::position(Vertex v) const {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) return -1;
  return static_cast<int>(it - bag.begin());
}

void DpContext::complete(WitnessArena::Id w, std::optional<Edge> last) {
  if (found) return;
  found = true;
  if (!keep_witnesses) return;
  cycle = arena.collect(w);
  if (last) {
    cycle.push_back(*last);
    std::sort(cycle.begin(), cycle.end());
  }
}

PartialTable transition_leaf(const DpContext& ctx) {
  PartialTable t;
  t.states.emplace_back();
  if (ctx.keep_witnesses) t.witness.push_back(WitnessArena::kEmpty);
  return t;
}

PartialTable transition_introduce_vertex(PartialTable tbl, Vertex v) {
  const int k = static_cast<int>(
      std::lower_bound(tbl.bag.begin(), tbl.bag.end(), v) - tbl.bag.begin());
  tbl.bag.insert(tbl.bag.begin() + k, v);
  if (static_cast<int>(tbl.bag.size()) > kMaxBag)
    throw std::length_error("bag exceeds " + std::to_string(kMaxBag) + " vertices");
  const std::uint64_t low_mask = k == 0 ? 0 : (std::uint64_t{1} << (2 * k)) - 1;
  for (State& s : tbl.states) {
    s.degrees = (s.degrees & low_mask) | ((s.degrees & ~low_mask) << 2);
    for (int i = kMaxBag - 1; i > k; --i) s.partner[i] = s.partner[i - 1];
    s.partner[k] = -1;
    for (auto& p : s.partner)
      if (p >= k) ++p;
  }
  // shifting keeps the relative order, so the table stays sorted and unique
  return tbl;
}

PartialTable transition_introduce_edge(const PartialTable& tbl, Edge e,
                                       int subtree_count, DpContext& ctx) {
  const int iu = tbl.position(e.u);
  const int iv = tbl.position(e.v);
  const int m = static_cast<int>(tbl.bag.size());
  PartialTable out;
  out.bag = tbl.bag;
  out.states.reserve(2 * tbl.size());
  const bool wit = ctx.keep_witnesses;
  if (wit) out.witness.reserve(2 * tbl.size());

  for (std::size_t idx = 0; idx < tbl.size(); ++idx) {
    const State& s = tbl.states[idx];
    out.states.push_back(s);
    if (wit) out.witness.push_back(tbl.witness[idx]);

    const int du = s.deg(iu), dv = s.deg(iv);
    if (du == 2 || dv == 2) continue;
    State t = s;
    t.set_deg(iu, du + 1);
    t.set_deg(iv, dv + 1);
    if (du == 0 && dv == 0) {
      t.pair(iu, iv);
    } else if (du == 0) {
      const int pv = s.partner[iv];
      t.partner[iv] = -1;
      t.pair(iu, pv);
    } else if (dv == 0) {
      const int pu = s.partner[iu];
      t.partner[iu] = -1;
      t.pair(iv, pu);
    } else if (s.partner[iu] == iv) {
      // closes a cycle: legal only as the final, spanning one
      bool spanning = subtree_count == ctx.n;
      for (int i = 0; spanning && i < m; ++i)
        if (i != iu && i != iv && s.deg(i) != 2) spanning = false;
      if (spanning) ctx.complete(wit ? tbl.witness[idx] : WitnessArena::kEmpty, e);
      continue;
    } else {
      const int pu = s.partner[iu], pv = s.partner[iv];
      t.partner[iu] = -1;
      t.partner[iv] = -1;
      t.pair(pu, pv);
    }
    out.states.push_back(t);
    if (wit) out.witness.push_back(ctx.arena.add_edge(tbl.witness[idx], e));
  }
  dedupe(out);
  return out;
}

PartialTable transition_forget(PartialTable tbl, Vertex v) {
  const int k = tbl.position(v);
  const std::uint64_t low_mask = k == 0 ? 0 : (std::uint64_t{1} << (2 * k)) - 1;
  const bool wit = !tbl.witness.empty();
  std::size_t kept = 0;
  for (std::size_t idx = 0; idx < tbl.size(); ++idx) {
    State s = tbl.states[idx];
    if (s.deg(k) != 2) continue;
    s.degrees = (s.degrees & low_mask) | ((s.degrees >> 2) & ~low_mask);
    for (int i = k; i + 1 < kMaxBag; ++i) s.partner[i] = s.partner[i + 1];
    s.partner[kMaxBag - 1] = -1;
    for (auto& p : s.partner)
      if (p > k) --p;
    tbl.states[kept] = s;
    if (wit) tbl.witness[kept] = tbl.witness[idx];
    ++kept;
  }
  tbl.states.resize(kept);
  if (wit) tbl.witness.resize(kept);
  tbl.bag.erase(tbl.bag.begin() + k);
  dedupe(tbl);
  return tbl;
}

PartialTable transition_join(const PartialTable& a, const PartialTable& b,
                             int subtree_count, DpContext& ctx) {
  const int m = static_cast<int>(a.bag.size());
  const bool wit = ctx.keep_witnesses;
  PartialTable out;
  out.bag = a.bag;

  // bucket ranges; dedupe leaves tables sorted by degrees first
  auto ranges = [](const PartialTable& t) {
    std::vector<std::pair<std::size_t, std::size_t>> r;
    for (std::size_t i = 0; i < t.size();) {
      std::size_t j = i;
      while (j < t.size() && t.states[j].degrees == t.states[i].degrees) ++j;
      r.emplace_back(i, j);
      i = j;
    }
    return r;
  };
  const auto ra = ranges(a), rb = ranges(b);

  std::array<int, kMaxBag> walk_mark{};
  for (auto [a0, a1] : ra) {
    const std::uint64_t da = a.states[a0].degrees;
    for (auto [b0, b1] : rb) {
      const std::uint64_t db = b.states[b0].degrees;
      if (degrees_clash(da, db)) continue;
      const std::uint64_t dsum = da + db;
      for (std::size_t x = a0; x < a1; ++x) {
        const State& sa = a.states[x];
        for (std::size_t y = b0; y < b1; ++y) {
          const State& sb = b.states[y];
          State t;
          t.degrees = dsum;
          walk_mark.fill(0);
          // open alternating paths: start at merged degree-1 positions
          for (int i = 0; i < m; ++i) {
            if (t.deg(i) != 1 || walk_mark[i]) continue;
            walk_mark[i] = 1;
            bool use_a = sa.deg(i) == 1;
            int cur = i;
            for (;;) {
              int nxt = use_a ? sa.partner[cur] : sb.partner[cur];
              walk_mark[nxt] = 1;
              if (t.deg(nxt) == 1) {
                t.pair(i, nxt);
                break;
              }
              cur = nxt;
              use_a = !use_a;
            }
          }
          // leftover positions with degree 1 on both sides lie on closed cycles
          int cycles = 0;
          for (int i = 0; i < m; ++i) {
            if (walk_mark[i] || sa.deg(i) != 1 || sb.deg(i) != 1) continue;
            ++cycles;
            int cur = i;
            bool use_a = true;
            do {
              walk_mark[cur] = 1;
              cur = use_a ? sa.partner[cur] : sb.partner[cur];
              use_a = !use_a;
            } while (cur != i);
          }
          if (cycles == 0) {
            out.states.push_back(t);
            if (wit) out.witness.push_back(ctx.arena.merge(a.witness[x], b.witness[y]));
            continue;
          }
          bool spanning = cycles == 1 && subtree_count == ctx.n;
          for (int i = 0; spanning && i < m; ++i)
            if (t.deg(i) != 2) spanning = false;
          if (spanning)
            ctx.complete(wit ? ctx.arena.merge(a.witness[x], b.witness[y])
                             : WitnessArena::kEmpty);
        }
      }
    }
  }
  dedupe(out);
  return out;
}

void dedupe(PartialTable& tbl) {
  if (tbl.witness.empty()) {
    std::sort(tbl.states.begin(), tbl.states.end());
    tbl.states.erase(std::unique(tbl.states.begin(), tbl.states.end()), tbl.states.end());
    return;
  }
  std::vector<std::uint32_t> order(tbl.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return tbl.states[x] < tbl.states[y];
  });
  std::vector<State> states;
  std::vector<WitnessArena::Id> witness;
  states.reserve(order.size());
  witness.reserve(order.size());
  for (std::uint32_t i : order) {
    if (!states.empty() && states.back() == tbl.states[i]) continue;
    states.push_back(tbl.states[i]);
    witness.push_back(tbl.witness[i]);
  }
  tbl.states = std::move(states);
  tbl.witness = std::move(witness);
}

std::optional<std::string> check_witness(const PartialTable& tbl, std::size_t idx,
                                         const WitnessArena& arena, int subtree_vertices) {
  const State& s = tbl.states[idx];
  const auto edges = arena.collect(tbl.witness.at(idx));
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  const int m = static_cast<int>(tbl.bag.size());
  for (int i = 0; i < m; ++i) {
    auto it = adj.find(tbl.bag[i]);
    int d = it == adj.end() ? 0 : static_cast<int>(it->second.size());
    if (d != s.deg(i)) return "degree of bag vertex " + std::to_string(tbl.bag[i]) + " mismatch";
  }
  int forgotten = 0;
  for (const auto& [v, nb] : adj) {
    if (std::binary_search(tbl.bag.begin(), tbl.bag.end(), v)) continue;
    if (nb.size() != 2) return "forgotten vertex " + std::to_string(v) + " not of degree 2";
    ++forgotten;
  }
  if (forgotten != subtree_vertices - m) return "forgotten vertices not all covered";
  std::size_t walked = 0;
  for (int i = 0; i < m; ++i) {
    if (s.deg(i) != 1) continue;
    const Vertex start = tbl.bag[i];
    Vertex prev = 0, cur = start;
    for (;;) {
      const auto& nb = adj[cur];
      if (cur != start && nb.size() == 1) break;
      Vertex nxt = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = nxt;
      if (++walked > 2 * edges.size()) return "walk does not terminate";
    }
    if (tbl.position(cur) != s.partner[i]) return "path endpoints do not match pairing";
  }
  // each path is walked from both ends
  if (walked != 2 * edges.size()) return "witness contains a cycle";
  return std::nullopt;
}

}  // namespace hamcycle
