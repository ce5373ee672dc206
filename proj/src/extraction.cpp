#include "hamcycle/extraction.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace hamcycle {

std::vector<Edge> CyclePath::path_edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    out.emplace_back(vertices[i], vertices[i + 1]);
  return out;
}

std::vector<Edge> CyclePath::cycle_edges() const {
  auto out = path_edges();
  if (vertices.size() >= 3) out.emplace_back(vertices.back(), vertices.front());
  return out;
}

bool verify_cycle(const Graph& g, const CyclePath& c) {
  const int n = g.num_vertices();
  if (n < 3 || static_cast<int>(c.vertices.size()) != n) return false;
  std::vector<char> seen(n + 1, 0);
  for (Vertex v : c.vertices) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    if (!g.has_edge(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()])) return false;
  return true;
}

Graph restrict_for_path(const Graph& g, const CyclePath& p) {
  const auto& vs = p.vertices;
  if (vs.size() < 3) throw std::invalid_argument("path needs at least two edges");
  std::vector<char> internal(g.num_vertices() + 1, 0), seen(g.num_vertices() + 1, 0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Vertex v = vs[i];
    if (v < 1 || v > g.num_vertices() || seen[v]) throw std::invalid_argument("not a simple path");
    seen[v] = 1;
    if (i > 0 && !g.has_edge(vs[i - 1], v)) throw std::invalid_argument("path edge missing");
    if (i > 0 && i + 1 < vs.size()) internal[v] = 1;
  }
  const auto keep = p.path_edges();
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    bool touches = internal[e.u] || internal[e.v];
    if (!touches || std::find(keep.begin(), keep.end(), e) != keep.end()) kept.push_back(e);
  }
  return Graph(g.num_vertices(), kept);
}

CyclePath extract_from_witness(const std::vector<Edge>& edges, int n) {
  if (n < 3 || static_cast<int>(edges.size()) != n)
    throw std::invalid_argument("edge set is not a spanning cycle");
  std::vector<std::vector<Vertex>> adj(n + 1);
  for (const Edge& e : edges) {
    if (e.u < 1 || e.v > n || e.u == e.v) throw std::invalid_argument("edge out of range");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (int v = 1; v <= n; ++v)
    if (adj[v].size() != 2) throw std::invalid_argument("vertex without degree two");
  CyclePath c;
  Vertex prev = 1, cur = std::min(adj[1][0], adj[1][1]);
  c.vertices.push_back(1);
  while (cur != 1) {
    if (static_cast<int>(c.vertices.size()) >= n) throw std::invalid_argument("not a single cycle");
    c.vertices.push_back(cur);
    Vertex next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(c.vertices.size()) != n) throw std::invalid_argument("not a single cycle");
  return c;
}

namespace {

class Search {
 public:
  Search(const Graph& g, const TreeDecomposition& td, const DecisionFn& decide, std::size_t& calls)
      : g_(g), td_(td), decide_(decide), calls_(calls), alive_(g.num_edges(), 1) {}

  std::optional<CyclePath> run() {
    const int n = g_.num_vertices();
    const Vertex start = 1;
    // first cycle edge at `start`: drop the longest prefix of its edges that
    // keeps the graph Hamiltonian; the next edge is then forced
    auto cand = incident(start, 0, 0);
    if (cand.empty()) return std::nullopt;
    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (ask_without({cand.begin(), cand.begin() + mid}))
        lo = mid;
      else
        hi = mid - 1;
    }
    for (std::size_t i = 0; i < lo; ++i) alive_[cand[i]] = 0;
    CyclePath p;
    p.vertices = {g_.edges()[cand[lo]].other(start), start};

    while (static_cast<int>(p.vertices.size()) < n) {
      const Vertex tail = p.vertices.back();
      const Vertex prev = p.vertices[p.vertices.size() - 2];
      cand = incident(tail, prev, p.vertices.front());
      // every Hamiltonian cycle through p leaves the tail along one candidate
      while (cand.size() > 1) {
        const std::size_t half = cand.size() / 2;
        std::vector<int> first(cand.begin(), cand.begin() + half), second(cand.begin() + half, cand.end());
        if (ask_without(second)) {
          kill(second);
          cand = std::move(first);
        } else {
          kill(first);
          cand = std::move(second);
        }
      }
      if (cand.empty()) return std::nullopt;
      const Vertex next = g_.edges()[cand[0]].other(tail);
      if (std::find(p.vertices.begin(), p.vertices.end(), next) != p.vertices.end())
        return std::nullopt;
      p.vertices.push_back(next);
      // the old tail is now internal: keep only its path edges
      for (int e : incident(tail, prev, next)) alive_[e] = 0;
    }
    const int closing = g_.edge_index(p.vertices.back(), p.vertices.front());
    if (closing < 0 || !alive_[closing] || !verify_cycle(g_, p)) return std::nullopt;
    return p;
  }

 private:
  // alive edges at v, excluding those to skip1/skip2
  std::vector<int> incident(Vertex v, Vertex skip1, Vertex skip2) const {
    std::vector<int> out;
    for (Vertex w : g_.neighbors(v)) {
      if (w == skip1 || w == skip2) continue;
      int e = g_.edge_index(v, w);
      if (alive_[e]) out.push_back(e);
    }
    return out;
  }

  void kill(const std::vector<int>& es) {
    for (int e : es) alive_[e] = 0;
  }

  bool ask_without(const std::vector<int>& removed) {
    std::vector<char> mask = alive_;
    for (int e : removed) mask[e] = 0;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) es.push_back(g_.edges()[i]);
    ++calls_;
    return decide_(Graph(g_.num_vertices(), es), td_);
  }

  const Graph& g_;
  const TreeDecomposition& td_;
  const DecisionFn& decide_;
  std::size_t& calls_;
  std::vector<char> alive_;
};

}  // namespace

ExtractionResult extract_self_reduce(const Graph& g, const TreeDecomposition& td,
                                     const DecisionFn& decide, int attempts) {
  ExtractionResult res;
  ++res.calls;
  if (!decide(g, td)) {
    res.status = ExtractStatus::NotHamiltonian;
    return res;
  }
  for (res.attempts = 1; res.attempts <= std::max(1, attempts); ++res.attempts) {
    Search s(g, td, decide, res.calls);
    if (auto c = s.run()) {
      res.status = ExtractStatus::Found;
      res.cycle = std::move(*c);
      return res;
    }
  }
  res.attempts = std::max(1, attempts);
  res.status = ExtractStatus::Inconsistent;
  return res;
}

}  // namespace hamcycle
