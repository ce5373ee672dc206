#include "hamcycle/decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "hamcycle/graph_io.hpp"

namespace hamcycle {

int TreeDecomposition::width() const {
  return static_cast<int>(max_bag_size()) - 1;
}

std::size_t TreeDecomposition::max_bag_size() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

TdCheck violation(std::string what) {
  TdCheck c;
  c.violation = std::move(what);
  return c;
}

}  // namespace

TdCheck validate_td(const Graph& g, const TreeDecomposition& td) {
  const int n = g.num_vertices();
  const std::size_t nodes = td.bags.size();
  if (nodes == 0) {
    if (n == 0) return TdCheck{true, -1, {}};
    return violation("decomposition has no nodes");
  }
  if (td.tree_edges.size() != nodes - 1)
    return violation("tree has " + std::to_string(td.tree_edges.size()) +
                     " edges, expected " + std::to_string(nodes - 1));
  DisjointSets ds(nodes);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= static_cast<int>(nodes) || b >= static_cast<int>(nodes))
      return violation("tree edge references unknown node");
    if (!ds.unite(a, b)) return violation("tree contains a cycle");
  }

  std::vector<std::vector<int>> occurrences(n + 1);
  for (std::size_t t = 0; t < nodes; ++t) {
    std::vector<Vertex> bag = td.bags[t];
    std::sort(bag.begin(), bag.end());
    if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
      return violation("bag " + std::to_string(t + 1) + " repeats a vertex");
    for (Vertex v : bag) {
      if (v < 1 || v > n)
        return violation("bag " + std::to_string(t + 1) + " has vertex " +
                         std::to_string(v) + " out of range");
      occurrences[v].push_back(static_cast<int>(t));
    }
  }
  // occurrence set of v is connected iff the tree edges inside it number |set|-1
  std::vector<int> inside(n + 1, 0);
  for (auto [a, b] : td.tree_edges) {
    const auto& ba = td.bags[a];
    for (Vertex v : ba)
      if (std::find(td.bags[b].begin(), td.bags[b].end(), v) != td.bags[b].end())
        ++inside[v];
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (occurrences[v].empty())
      return violation("vertex " + std::to_string(v) + " is in no bag");
    if (inside[v] != static_cast<int>(occurrences[v].size()) - 1)
      return violation("occurrences of vertex " + std::to_string(v) +
                       " are not connected in the tree");
  }
  for (const Edge& e : g.edges()) {
    const auto& a = occurrences[e.u];
    const auto& b = occurrences[e.v];
    std::vector<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    if (common.empty())
      return violation("edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "} is in no bag");
  }
  return TdCheck{true, td.width(), {}};
}

namespace {

// Graph undergoing vertex elimination; adjacency kept sorted.
class EliminationGraph {
 public:
  explicit EliminationGraph(const Graph& g) : adj_(g.num_vertices() + 1) {
    for (Vertex v = 1; v <= g.num_vertices(); ++v) {
      auto nb = g.neighbors(v);
      adj_[v].assign(nb.begin(), nb.end());
    }
  }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  bool adjacent(Vertex a, Vertex b) const {
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
  }

  long fill(Vertex v) const {
    const auto& nb = adj_[v];
    long missing = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!adjacent(nb[i], nb[j])) ++missing;
    return missing;
  }

  /// Removes v, turning its neighborhood into a clique. Returns that
  /// neighborhood.
  std::vector<Vertex> eliminate(Vertex v) {
    std::vector<Vertex> nb = std::move(adj_[v]);
    adj_[v].clear();
    for (Vertex a : nb) {
      auto& la = adj_[a];
      la.erase(std::lower_bound(la.begin(), la.end(), v));
      for (Vertex b : nb) {
        if (b == a) continue;
        auto it = std::lower_bound(la.begin(), la.end(), b);
        if (it == la.end() || *it != b) la.insert(it, b);
      }
    }
    return nb;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
};

}  // namespace

std::optional<std::vector<Vertex>> min_fill_order_capped(
    const Graph& g, int width_cap, std::uint64_t tie_break_seed) {
  const int n = g.num_vertices();
  EliminationGraph eg(g);
  using Key = std::tuple<long, int, Vertex>;  // (fill, degree, id)
  std::set<Key> queue;
  std::vector<Key> key_of(n + 1);
  for (Vertex v = 1; v <= n; ++v) {
    key_of[v] = {eg.fill(v), eg.degree(v), v};
    queue.insert(key_of[v]);
  }
  std::mt19937_64 rng(tie_break_seed);
  std::vector<char> gone(n + 1, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> ties;
  while (!queue.empty()) {
    Vertex v = std::get<2>(*queue.begin());
    if (tie_break_seed != 0) {
      ties.clear();
      auto [f0, d0, _] = *queue.begin();
      for (auto it = queue.begin();
           it != queue.end() && std::get<0>(*it) == f0 && std::get<1>(*it) == d0; ++it)
        ties.push_back(std::get<2>(*it));
      v = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)];
    }
    if (eg.degree(v) > width_cap) return std::nullopt;
    queue.erase(key_of[v]);
    gone[v] = 1;
    order.push_back(v);
    std::vector<Vertex> nb = eg.eliminate(v);

    // Fill scores change for the old neighbors and for anything adjacent to
    // two of them.
    std::vector<Vertex> touched = nb;
    for (Vertex a : nb)
      for (Vertex b : eg.neighbors(a)) touched.push_back(b);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (Vertex u : touched) {
      if (gone[u]) continue;
      queue.erase(key_of[u]);
      key_of[u] = {eg.fill(u), eg.degree(u), u};
      queue.insert(key_of[u]);
    }
  }
  return order;
}

std::vector<Vertex> min_fill_order(const Graph& g, std::uint64_t tie_break_seed) {
  return *min_fill_order_capped(g, g.num_vertices(), tie_break_seed);
}

TreeDecomposition order_to_td(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.num_vertices();
  std::vector<int> position(n + 1, -1);
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("elimination order is not a permutation");
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    if (v < 1 || v > n || position[v] >= 0)
      throw std::invalid_argument("elimination order is not a permutation");
    position[v] = static_cast<int>(i);
  }
  TreeDecomposition td;
  if (n == 0) return td;
  td.bags.resize(n);
  EliminationGraph eg(g);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    Vertex v = order[i];
    std::vector<Vertex> later = eg.eliminate(v);
    td.bags[i] = later;
    td.bags[i].push_back(v);
    std::sort(td.bags[i].begin(), td.bags[i].end());
    if (later.empty()) {
      roots.push_back(i);
      continue;
    }
    int parent = n;
    for (Vertex w : later) parent = std::min(parent, position[w]);
    td.tree_edges.emplace_back(i, parent);
  }
  // one root per connected component; chain them into a single tree
  for (std::size_t r = 1; r < roots.size(); ++r)
    td.tree_edges.emplace_back(roots[r - 1], roots[r]);
  return td;
}

TreeDecomposition min_fill_decomposition(const Graph& g) {
  return order_to_td(g, min_fill_order(g));
}

TreeDecomposition parse_td(std::istream& in, int* n_out) {
  std::string raw;
  int line = 0;
  long nbags = -1, n = -1;
  TreeDecomposition td;
  std::vector<char> seen;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == 'c' || tok[0][0] == '#') continue;
    auto num = [&](const std::string& s) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(s, &used);
      } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + s + "'");
      }
      if (used != s.size()) throw ParseError(line, "expected integer, got '" + s + "'");
      return v;
    };
    if (tok[0] == "s") {
      if (nbags >= 0) throw ParseError(line, "duplicate solution line");
      if (tok.size() != 5 || tok[1] != "td")
        throw ParseError(line, "malformed solution line, expected 's td <bags> <maxbag> <n>'");
      nbags = num(tok[2]);
      num(tok[3]);
      n = num(tok[4]);
      if (nbags < 0 || n < 0) throw ParseError(line, "negative count in solution line");
      td.bags.resize(nbags);
      seen.assign(nbags, 0);
      continue;
    }
    if (nbags < 0) throw ParseError(line, "content before solution line");
    auto bag_id = [&](const std::string& s) {
      long id = num(s);
      if (id < 1 || id > nbags)
        throw ParseError(line, "bag id " + s + " out of range 1.." + std::to_string(nbags));
      return static_cast<int>(id - 1);
    };
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(line, "bag line without id");
      int id = bag_id(tok[1]);
      if (seen[id]) throw ParseError(line, "bag " + tok[1] + " declared twice");
      seen[id] = 1;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        long v = num(tok[i]);
        if (v < 1 || v > n)
          throw ParseError(line, "vertex " + tok[i] + " out of range 1.." + std::to_string(n));
        td.bags[id].push_back(static_cast<Vertex>(v));
      }
      std::sort(td.bags[id].begin(), td.bags[id].end());
      continue;
    }
    if (tok.size() != 2) throw ParseError(line, "malformed tree edge line");
    td.tree_edges.emplace_back(bag_id(tok[0]), bag_id(tok[1]));
  }
  if (nbags < 0) throw ParseError(line, "missing solution line");
  if (n_out) *n_out = static_cast<int>(n);
  return td;
}

TreeDecomposition parse_td_file(const std::string& path, int* n_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_td(in, n_out);
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.bags.size() << ' ' << td.max_bag_size() << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

}  // namespace hamcycle
