#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "graphs.hpp"
#include "hamcycle/decomposition.hpp"
#include "hamcycle/graph_io.hpp"
#include "hamcycle/nice.hpp"

using namespace hamcycle;

namespace {

struct Elimination {
  int width = 0;
  int fill = 0;
};

// Direct simulation on an adjacency matrix.
Elimination simulate(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.num_vertices();
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  std::vector<char> gone(n + 1, 0);
  Elimination r;
  for (Vertex v : order) {
    std::vector<Vertex> nb;
    for (Vertex w = 1; w <= n; ++w)
      if (!gone[w] && adj[v][w]) nb.push_back(w);
    r.width = std::max(r.width, static_cast<int>(nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!adj[nb[i]][nb[j]]) {
          adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
          ++r.fill;
        }
    gone[v] = 1;
  }
  return r;
}

Graph random_tree(int n, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> pick(1, v - 1);
    e.emplace_back(v, pick(rng));
  }
  return Graph(n, e);
}

// Series and parallel extensions of a single edge: treewidth at most 2.
Graph random_series_parallel(int n, std::mt19937_64& rng) {
  std::vector<Edge> e{Edge(1, 2)};
  for (int v = 3; v <= n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, e.size() - 1);
    Edge base = e[pick(rng)];
    if (rng() % 2) {
      e.erase(std::find(e.begin(), e.end(), base));
    }
    e.emplace_back(base.u, v);
    e.emplace_back(base.v, v);
  }
  return Graph(n, e);
}

TreeDecomposition parse_text(const std::string& s, int* n = nullptr) {
  std::istringstream in(s);
  return parse_td(in, n);
}

}  // namespace

TEST_CASE("validate_td examples") {
  Graph k3 = testgraphs::complete(3);
  TreeDecomposition one{{{1, 2, 3}}, {}};
  TdCheck c = validate_td(k3, one);
  CHECK(c.valid);
  CHECK(c.width == 2);

  Graph p3 = testgraphs::path(3);
  TreeDecomposition split{{{1, 2}, {2, 3}, {1}}, {{0, 1}, {1, 2}}};
  TdCheck bad = validate_td(p3, split);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violation.find("connected") != std::string::npos);

  // C6 path decomposition: bags {1, i, i+1}
  Graph c6 = testgraphs::cycle(6);
  TreeDecomposition pd;
  for (int i = 2; i <= 5; ++i) pd.bags.push_back({1, i, i + 1});
  for (int i = 0; i + 1 < 4; ++i) pd.tree_edges.emplace_back(i, i + 1);
  CHECK(validate_td(c6, pd).width == 2);

  TreeDecomposition missing_edge{{{1, 2}, {3}}, {{0, 1}}};
  CHECK_FALSE(validate_td(p3, missing_edge).valid);
  TreeDecomposition cyclic{{{1, 2}, {2, 3}, {2}}, {{0, 1}, {1, 2}, {2, 0}}};
  CHECK_FALSE(validate_td(p3, cyclic).valid);
  TreeDecomposition uncovered{{{1, 2}}, {}};
  CHECK_FALSE(validate_td(p3, uncovered).valid);
}

TEST_CASE("min-fill on trees adds no fill") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    Graph t = random_tree(2 + rep, rng);
    auto order = min_fill_order(t);
    CHECK(simulate(t, order).fill == 0);
    CHECK(order_to_td(t, order).width() == 1);
  }
}

TEST_CASE("C5: every order fills, width 2") {
  Graph c5 = testgraphs::cycle(5);
  std::vector<Vertex> order{1, 2, 3, 4, 5};
  do {
    Elimination e = simulate(c5, order);
    CHECK(e.fill > 0);
    CHECK(e.width == 2);
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(min_fill_decomposition(c5).width() == 2);
}

TEST_CASE("K4 has width 3 under any order") {
  Graph k4 = testgraphs::complete(4);
  CHECK(min_fill_decomposition(k4).width() == 3);
  CHECK(order_to_td(k4, {4, 2, 1, 3}).width() == 3);
}

TEST_CASE("order_to_td") {
  Graph p4 = testgraphs::path(4);
  TreeDecomposition td = order_to_td(p4, {1, 2, 3, 4});
  CHECK(validate_td(p4, td).valid);
  CHECK(td.width() == 1);

  Graph c6 = testgraphs::cycle(6);
  TreeDecomposition t6 = order_to_td(c6, min_fill_order(c6));
  CHECK(validate_td(c6, t6).valid);
  CHECK(t6.width() == 2);

  CHECK_THROWS_AS(order_to_td(p4, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(order_to_td(p4, {1, 2, 2, 4}), std::invalid_argument);
}

TEST_CASE("order width matches direct simulation") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    Graph g = testgraphs::gnp(9, 0.35, rng);
    std::vector<Vertex> order(9);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    TreeDecomposition td = order_to_td(g, order);
    CHECK(validate_td(g, td).valid);
    CHECK(td.width() == std::max(0, simulate(g, order).width));
  }
}

TEST_CASE("min-fill decompositions are always valid") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = testgraphs::gnp(3 + rep % 15, 0.3, rng);
    std::uint64_t seed = rep % 3;
    auto order = min_fill_order(g, seed);
    CHECK(validate_td(g, order_to_td(g, order)).valid);
  }
}

TEST_CASE("min-fill width on series-parallel graphs") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = random_series_parallel(3 + rep % 25, rng);
    CHECK(min_fill_decomposition(g).width() <= 2);
  }
}

TEST_CASE("min-fill with a width cap") {
  Graph k5 = testgraphs::complete(5);
  CHECK_FALSE(min_fill_order_capped(k5, 3).has_value());
  CHECK(min_fill_order_capped(k5, 4).has_value());
}

TEST_CASE("PACE td reader and writer") {
  int n = 0;
  TreeDecomposition td = parse_text("s td 1 3 3\nb 1 1 2 3\n", &n);
  CHECK(n == 3);
  REQUIRE(td.bags.size() == 1);
  CHECK(td.bags[0] == std::vector<Vertex>{1, 2, 3});
  CHECK(validate_td(testgraphs::complete(3), td).valid);

  TreeDecomposition with_empty = parse_text("c x\ns td 2 2 2\nb 1 1 2\nb 2\n1 2\n");
  CHECK(with_empty.bags[1].empty());
  CHECK(with_empty.width() == 1);

  CHECK_THROWS_AS(parse_text("s td 1 2 2\nb 2 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_text("s td 2 2 2\nb 1 1 2\nb 2 2\n1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_text("s xx 1 2 2\n"), ParseError);

  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    Graph g = testgraphs::random_connected(12, 0.2, rng);
    TreeDecomposition orig = min_fill_decomposition(g);
    std::ostringstream out;
    write_td(out, orig, g.num_vertices());
    int n2 = 0;
    CHECK(parse_text(out.str(), &n2) == orig);
    CHECK(n2 == 12);
  }
}

TEST_CASE("make_nice on a one-bag triangle") {
  Graph k3 = testgraphs::complete(3);
  NiceDecomposition nd = make_nice(k3, TreeDecomposition{{{1, 2, 3}}, {}});
  CHECK_FALSE(validate_nice(k3, nd).has_value());
  CHECK(nd.count(NodeKind::Leaf) == 1);
  CHECK(nd.count(NodeKind::IntroduceVertex) == 3);
  CHECK(nd.count(NodeKind::IntroduceEdge) == 3);
  CHECK(nd.count(NodeKind::ForgetVertex) == 3);
  CHECK(nd.count(NodeKind::Join) == 0);
  CHECK(nd.nodes.size() == 10);
  CHECK(nd.nodes.back().bag.empty());
  CHECK(nd.nodes.back().subtree_vertices == 3);
  CHECK(nd.width() == 2);
  // all introduces come first, then each forget is preceded by its edges
  for (int i = 1; i <= 3; ++i) CHECK(nd.nodes[i].kind == NodeKind::IntroduceVertex);
  CHECK(nd.nodes[4].kind == NodeKind::IntroduceEdge);
  CHECK(nd.nodes[5].kind == NodeKind::IntroduceEdge);
  CHECK(nd.nodes[6].kind == NodeKind::ForgetVertex);
  CHECK(nd.nodes[7].kind == NodeKind::IntroduceEdge);
  CHECK(nd.nodes[8].kind == NodeKind::ForgetVertex);
  CHECK(nd.nodes[9].kind == NodeKind::ForgetVertex);
}

TEST_CASE("make_nice on an edgeless graph") {
  Graph g(4, std::vector<Edge>{});
  NiceDecomposition nd = make_nice(g, min_fill_decomposition(g));
  CHECK_FALSE(validate_nice(g, nd).has_value());
  CHECK(nd.count(NodeKind::IntroduceEdge) == 0);
}

TEST_CASE("make_nice rejects invalid decompositions") {
  Graph p3 = testgraphs::path(3);
  CHECK_THROWS_AS(make_nice(p3, TreeDecomposition{{{1, 2}}, {}}), std::invalid_argument);
}

TEST_CASE("make_nice property: invariants, width and edge counts") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = testgraphs::gnp(2 + rep % 14, 0.3, rng);
    TreeDecomposition td = min_fill_decomposition(g);
    NiceDecomposition nd = make_nice(g, td);
    auto bad = validate_nice(g, nd);
    CHECK_MESSAGE(!bad.has_value(), bad.value_or(""));
    CHECK(nd.width() == td.width());
    CHECK(nd.count(NodeKind::IntroduceEdge) == g.num_edges());
    std::set<Edge> seen;
    for (const auto& x : nd.nodes)
      if (x.kind == NodeKind::IntroduceEdge) seen.insert(x.edge);
    CHECK(seen.size() == g.num_edges());
  }
}

TEST_CASE("validate_nice catches tampering") {
  Graph c4 = testgraphs::cycle(4);
  NiceDecomposition nd = make_nice(c4, min_fill_decomposition(c4));
  REQUIRE_FALSE(validate_nice(c4, nd).has_value());

  NiceDecomposition no_edge = nd;
  for (auto& x : no_edge.nodes)
    if (x.kind == NodeKind::IntroduceEdge) {
      x.kind = NodeKind::IntroduceVertex;
      break;
    }
  CHECK(validate_nice(c4, no_edge).has_value());

  NiceDecomposition bad_count = nd;
  bad_count.nodes.back().subtree_vertices = 3;
  CHECK(validate_nice(c4, bad_count).has_value());
}
