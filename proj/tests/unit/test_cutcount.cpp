#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "graphs.hpp"
#include "hamcycle/cutcount.hpp"
#include "hamcycle/decomposition.hpp"
#include "hamcycle/oracle.hpp"
#include "hamcycle/z4conv.hpp"

using namespace hamcycle;

namespace {

NiceDecomposition nice_of(const Graph& g) { return make_nice(g, min_fill_decomposition(g)); }

// Sum over Hamiltonian cycles (as edge sets) of the product of their weights.
FieldElem weighted_cycle_sum(const Graph& g, const std::vector<FieldElem>& w,
                             const FieldSpec& f) {
  const int n = g.num_vertices();
  std::vector<Vertex> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  FieldElem total = 0;
  do {
    if (rest.front() > rest.back()) continue;  // each cycle once
    FieldElem prod = 1;
    Vertex prev = 1;
    bool ok = true;
    for (int i = 0; i <= n - 1 && ok; ++i) {
      Vertex cur = i < n - 1 ? rest[i] : 1;
      int idx = g.edge_index(prev, cur);
      ok = idx >= 0;
      if (ok) prod = f.mul(prod, w[idx]);
      prev = cur;
    }
    if (ok) total = f.add(total, prod);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return total;
}

CCKey key_of(std::initializer_list<CCState> s) {
  CCKey k = 0;
  int i = 0;
  for (CCState x : s) k = cc_set(k, i++, x);
  return k;
}

}  // namespace

TEST_CASE("key packing") {
  CCKey k = key_of({CCState::D1L, CCState::D2, CCState::D1R});
  CHECK(k == 0b111001);
  CHECK(cc_get(k, 2) == CCState::D1R);
  CHECK(cc_get(cc_set(k, 1, CCState::D0), 1) == CCState::D0);
}

TEST_CASE("cc_combine rules") {
  using S = CCState;
  CCKey out;
  REQUIRE(cc_combine(key_of({S::D1L, S::D0}), key_of({S::D1L, S::D2}), 2, out));
  CHECK(out == key_of({S::D2, S::D2}));
  REQUIRE(cc_combine(key_of({S::D1R}), key_of({S::D1R}), 1, out));
  CHECK(out == key_of({S::D2}));
  CHECK_FALSE(cc_combine(key_of({S::D1L}), key_of({S::D1R}), 1, out));
  CHECK_FALSE(cc_combine(key_of({S::D2}), key_of({S::D1L}), 1, out));
  CHECK_FALSE(cc_combine(key_of({S::D2}), key_of({S::D2}), 1, out));
  REQUIRE(cc_combine(key_of({S::D0, S::D1R}), key_of({S::D0, S::D0}), 2, out));
  CHECK(out == key_of({S::D0, S::D1R}));
}

TEST_CASE("normalize merges keys and drops zeros") {
  CCTable t;
  t.entries = {{5, 3}, {1, 7}, {5, 3}, {2, 0}, {1, 1}};
  t.normalize();
  REQUIRE(t.size() == 1);
  CHECK(t.entries[0] == std::pair<CCKey, FieldElem>{1, 6});
}

TEST_CASE("edge weights are reproducible") {
  Graph g = testgraphs::complete(5);
  FieldSpec f = FieldSpec::gf2_64();
  auto a = draw_edge_weights(g, f, 9), b = draw_edge_weights(g, f, 9);
  CHECK(a == b);
  CHECK(a.size() == g.num_edges());
  CHECK(a != draw_edge_weights(g, f, 10));
}

TEST_CASE("root value is the weighted Hamiltonian cycle sum") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 120; ++rep) {
    std::uniform_int_distribution<int> size(3, 8);
    Graph g = testgraphs::random_connected(size(rng), 0.5, rng);
    NiceDecomposition nd = nice_of(g);
    for (const FieldSpec& f : {FieldSpec::gf2_64(), FieldSpec::gf2_8()}) {
      const std::uint64_t seed = rng();
      const FieldElem want = weighted_cycle_sum(g, draw_edge_weights(g, f, seed), f);
      for (JoinKind j : {JoinKind::Naive, JoinKind::Fast}) {
        CCResult r = cc_decide(g, nd, f, seed, j);
        CHECK(r.root_value == want);
        CHECK(r.hamiltonian == (want != 0));
      }
    }
  }
}

TEST_CASE("decisions agree with the oracle") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 200; ++rep) {
    std::uniform_int_distribution<int> size(3, 12);
    std::uniform_real_distribution<double> dens(0.15, 0.6);
    Graph g = testgraphs::random_connected(size(rng), dens(rng), rng);
    const bool truth = brute_force_decide(g);
    NiceDecomposition nd = nice_of(g);
    CCResult r = cc_decide(g, nd, FieldSpec::gf2_64(), rep, JoinKind::Naive);
    CHECK(r.hamiltonian == truth);
    // a yes is never wrong, even in a small field
    if (!truth) CHECK_FALSE(cc_decide(g, nd, FieldSpec::gf2_16(), rep).hamiltonian);
  }
}

TEST_CASE("named graphs") {
  const FieldSpec f = FieldSpec::gf2_64();
  Graph petersen = testgraphs::petersen();
  CHECK_FALSE(cc_decide(petersen, nice_of(petersen), f, 1).hamiltonian);
  Graph k6 = testgraphs::complete(6);
  CHECK(cc_decide(k6, nice_of(k6), f, 1, JoinKind::Fast).hamiltonian);
  Graph c9 = testgraphs::cycle(9);
  CCResult r = cc_decide(c9, nice_of(c9), f, 1);
  auto w = draw_edge_weights(c9, f, 1);
  FieldElem prod = 1;
  for (FieldElem x : w) prod = f.mul(prod, x);
  CHECK(r.root_value == prod);
}

TEST_CASE("argument checks") {
  Graph c5 = testgraphs::cycle(5);
  NiceDecomposition nd = nice_of(c5);
  CHECK_THROWS_AS(cc_decide(c5, nd, FieldSpec(2, 0x3), 1), std::invalid_argument);
  NiceDecomposition broken = nd;
  broken.nodes.pop_back();
  CHECK_THROWS_AS(cc_decide(c5, broken, FieldSpec::gf2_64(), 1), std::invalid_argument);
  Deadline past = Deadline::after(-1);
  CHECK_THROWS_AS(cc_decide(c5, nd, FieldSpec::gf2_64(), 1, JoinKind::Naive, &past),
                  TimeoutError);
  CCTable a, b;
  a.bag = {1};
  CHECK_THROWS_AS(cc_join_naive(a, b, FieldSpec::gf2_64()), std::invalid_argument);
}
