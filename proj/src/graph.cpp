#include "hamcycle/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace hamcycle {

Graph::Graph(int n, std::span<const Edge> edges, std::size_t* duplicates)
    : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw GraphError("negative vertex count");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 1 || e.v > n)
      throw GraphError("edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "} out of range 1.." +
                       std::to_string(n));
    if (e.u == e.v)
      throw GraphError("self-loop at vertex " + std::to_string(e.u));
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  auto last = std::unique(edges_.begin(), edges_.end());
  if (duplicates) *duplicates = static_cast<std::size_t>(edges_.end() - last);
  edges_.erase(last, edges_.end());
  for (const Edge& e : edges_) {
    adj_[e.u - 1].push_back(e.v);
    adj_[e.v - 1].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a < 1 || a > n_ || b < 1 || b > n_) return false;
  const auto& na = adj_[a - 1];
  return std::binary_search(na.begin(), na.end(), b);
}

int Graph::edge_index(Vertex a, Vertex b) const {
  Edge e(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  return connected_components(*this).size() == 1;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> comp(n + 1, -1);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      out[id].push_back(x);
      for (Vertex y : g.neighbors(x))
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

namespace {

// Breadth-first distances from s; unreachable vertices get -1.
std::vector<int> bfs(const Graph& g, Vertex s, std::vector<Vertex>* parent) {
  std::vector<int> dist(g.num_vertices() + 1, -1);
  if (parent) parent->assign(g.num_vertices() + 1, 0);
  std::deque<Vertex> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    for (Vertex y : g.neighbors(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        if (parent) (*parent)[y] = x;
        q.push_back(y);
      }
  }
  return dist;
}

}  // namespace

GraphStats stats(const Graph& g) {
  GraphStats s;
  s.n = g.num_vertices();
  s.m = g.num_edges();
  if (s.n == 0) return s;
  s.min_deg = std::numeric_limits<int>::max();
  for (Vertex v = 1; v <= s.n; ++v) {
    s.min_deg = std::min(s.min_deg, g.degree(v));
    s.max_deg = std::max(s.max_deg, g.degree(v));
  }
  s.avg_deg = 2.0 * static_cast<double>(s.m) / s.n;

  // Girth: every non-tree edge (x,y) met by a BFS from r closes a closed walk
  // of length d(x)+d(y)+1 through r; the minimum over all roots is exact.
  int girth = std::numeric_limits<int>::max();
  std::vector<Vertex> parent;
  for (Vertex r = 1; r <= s.n; ++r) {
    auto dist = bfs(g, r, &parent);
    for (const Edge& e : g.edges()) {
      if (dist[e.u] < 0) continue;
      if (parent[e.u] == e.v || parent[e.v] == e.u) continue;
      girth = std::min(girth, dist[e.u] + dist[e.v] + 1);
    }
  }
  s.girth = girth == std::numeric_limits<int>::max() ? 0 : girth;

  auto comps = connected_components(g);
  const std::vector<Vertex>* largest = &comps.front();
  for (const auto& c : comps)
    if (c.size() > largest->size()) largest = &c;
  for (Vertex v : *largest) {
    auto dist = bfs(g, v, nullptr);
    for (Vertex w : *largest) s.diameter = std::max(s.diameter, dist[w]);
  }
  return s;
}

Graph delete_edges(const Graph& g, std::span<const Edge> removed) {
  std::vector<Edge> drop(removed.begin(), removed.end());
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (const Edge& e : drop)
    if (!g.has_edge(e.u, e.v))
      throw GraphError("cannot delete non-edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "}");
  std::vector<Edge> kept;
  kept.reserve(g.num_edges());
  std::set_difference(g.edges().begin(), g.edges().end(), drop.begin(),
                      drop.end(), std::back_inserter(kept));
  return Graph(g.num_vertices(), kept);
}

}  // namespace hamcycle
