#include <doctest.h>

#include <random>
#include <set>

#include "graphs.hpp"
#include "hamcycle/decomposition.hpp"
#include "hamcycle/f2.hpp"
#include "hamcycle/matchings.hpp"
#include "hamcycle/oracle.hpp"
#include "hamcycle/rank.hpp"

using namespace hamcycle;

namespace {

BitRow row_from(std::initializer_list<int> bits, std::size_t n) {
  BitRow r(n);
  for (int b : bits) r.set(b);
  return r;
}

// Rank by trying every nonempty subset for a zero sum.
std::size_t brute_rank(const std::vector<BitRow>& rows) {
  const std::size_t k = rows.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<BitRow> pick;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) pick.push_back(rows[i]);
    bool independent = true;
    for (std::uint32_t sub = 1; sub < (1u << pick.size()) && independent; ++sub) {
      BitRow acc(rows[0].size());
      for (std::size_t i = 0; i < pick.size(); ++i)
        if (sub >> i & 1) acc.xor_with(pick[i]);
      independent = acc.any();
    }
    if (independent) best = std::max(best, pick.size());
  }
  return best;
}

ReducePolicy always(RankVariant kind) {
  ReducePolicy p = ReducePolicy::defaults(kind);
  p.style = TriggerStyle::Alpha;
  p.alpha = 1e-9;
  return p;
}

// Every completion served by the family is served by the survivors.
bool represents(const std::vector<Matching>& family, const std::vector<std::size_t>& kept,
                const std::vector<Matching>& completions) {
  for (const Matching& m : completions) {
    bool before = false, after = false;
    for (const Matching& e : family) before = before || is_single_cycle(e, m);
    for (std::size_t i : kept) after = after || is_single_cycle(family[i], m);
    if (before != after) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("BitRow basics") {
  BitRow r(130);
  CHECK_FALSE(r.any());
  CHECK(r.lowest() == 130);
  r.set(129);
  r.set(64);
  CHECK(r.lowest() == 64);
  r.set(64, false);
  CHECK(r.lowest() == 129);
  BitRow s(130);
  s.set(129);
  CHECK(r == s);
  r.xor_with(s);
  CHECK_FALSE(r.any());
}

TEST_CASE("gaussian elimination keeps the first independent rows") {
  F2Matrix m(4);
  m.add_row(row_from({0, 1}, 4), 10);
  m.add_row(row_from({1, 2}, 4), 11);
  m.add_row(row_from({0, 2}, 4), 12);  // sum of the first two
  m.add_row(row_from({3}, 4), 13);
  m.add_row(BitRow(4), 14);
  CHECK(gaussian_eliminate(m) == std::vector<std::size_t>{10, 11, 13});
  CHECK_THROWS_AS(m.add_row(BitRow(5), 15), std::invalid_argument);
}

TEST_CASE("elimination rank agrees with subset search") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t cols = 1 + rng() % 70, k = 1 + rng() % 7;
    F2Matrix m(cols);
    std::vector<BitRow> rows;
    for (std::size_t i = 0; i < k; ++i) {
      BitRow r(cols);
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 5 == 0) r.set(c);
      if (i >= 2 && rng() % 3 == 0) {
        r = rows[0];
        r.xor_with(rows[1]);
      }
      rows.push_back(r);
      m.add_row(r, i);
    }
    CHECK(gaussian_eliminate(m).size() == brute_rank(rows));
    F2Basis b;
    for (const auto& r : rows) b.insert(r);
    CHECK(b.rank() == brute_rank(rows));
  }
}

TEST_CASE("matchings") {
  CHECK_THROWS_AS(make_matching(4, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_matching(4, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(make_matching(2, {{0, 0}}), std::invalid_argument);
  Matching a = make_matching(4, {{0, 1}, {2, 3}});
  Matching b = make_matching(4, {{0, 2}, {1, 3}});
  Matching c = make_matching(4, {{0, 3}, {1, 2}});
  CHECK_FALSE(is_single_cycle(a, a));
  CHECK(is_single_cycle(a, b));
  CHECK(is_single_cycle(a, c));
  CHECK(is_single_cycle(b, c));
  CHECK_THROWS_AS(is_single_cycle(a, make_matching(2, {{0, 1}})), std::invalid_argument);

  for (int l : {2, 4, 6, 8}) {
    auto all = enumerate_matchings(l);
    CHECK(all.size() == count_pairings(l));
    CHECK(std::set<Matching>(all.begin(), all.end()).size() == all.size());
    for (const auto& m : all)
      for (int i = 0; i < l; ++i) CHECK(m[m[i]] == i);
  }
  CHECK(enumerate_matchings(4).front() == a);
}

TEST_CASE("cut vectors") {
  Matching e = make_matching(2, {{0, 1}});
  BitRow v = cut_vector(e);
  CHECK(v.size() == 2);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));

  // {01, 23}: consistent cuts are index 0 (all left) and index 6 (2, 3 right)
  BitRow w = cut_vector(make_matching(4, {{0, 1}, {2, 3}}));
  CHECK(w.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(w.get(i) == (i == 0 || i == 6));
  CHECK_THROWS_AS(cut_vector(Matching{}), std::invalid_argument);
}

TEST_CASE("cut inner products count consistent cuts") {
  for (int l : {2, 4, 6, 8}) {
    auto all = enumerate_matchings(l);
    for (const auto& e : all)
      for (const auto& m : all) {
        BitRow x = cut_vector(e), y = cut_vector(m);
        int dot = 0;
        for (std::size_t i = 0; i < x.size(); ++i) dot ^= x.get(i) & y.get(i);
        CHECK((dot == 1) == is_single_cycle(e, m));
      }
  }
}

TEST_CASE("rank law and basis invariant") {
  const std::size_t expected[] = {1, 2, 4, 8};
  for (int idx = 0; idx < 4; ++idx) {
    const int l = 2 * (idx + 1);
    CHECK(single_cycle_rank(l) == expected[idx]);
    const BasisFamily& b = compute_basis(l);
    CHECK(b.l == l);
    REQUIRE(b.matchings.size() == expected[idx]);
    // rows of the basis matchings are independent
    F2Basis rows;
    for (const auto& m : b.matchings) {
      BitRow r(count_pairings(l));
      auto all = enumerate_matchings(l);
      for (std::size_t j = 0; j < all.size(); ++j) r.set(j, is_single_cycle(m, all[j]));
      CHECK(rows.insert(r));
    }
    CHECK(&compute_basis(l) == &b);
  }
  CHECK_THROWS_AS(compute_basis(3), std::invalid_argument);
  CHECK_THROWS_AS(compute_basis(kBasisCap + 2), std::invalid_argument);
}

TEST_CASE("improved vectors") {
  const BasisFamily& b = compute_basis(4);
  for (const auto& e : enumerate_matchings(4)) {
    BitRow v = improved_vector(e, b);
    CHECK(v.size() == b.matchings.size());
    for (std::size_t i = 0; i < b.matchings.size(); ++i)
      CHECK(v.get(i) == is_single_cycle(e, b.matchings[i]));
  }
}

TEST_CASE("policy triggers") {
  ReducePolicy p = ReducePolicy::defaults(RankVariant::Improved);
  CHECK(p.alpha == 2.0);
  CHECK(ReducePolicy::defaults(RankVariant::Cut4t).alpha == 8.0);
  CHECK(p.triggered(3, 4, 5));         // tau 3
  CHECK_FALSE(p.triggered(2, 4, 5));
  CHECK_FALSE(p.triggered(7, 10, 5));  // no tau entry: alpha * 16 = 32
  CHECK(p.triggered(32, 10, 5));
  CHECK_FALSE(p.triggered(3, 4, 12));  // wide bag: alpha * 2 = 4
  CHECK(p.triggered(4, 4, 12));
  p.style = TriggerStyle::Tau;
  CHECK(p.triggered(3, 4, 12));
  p.tau[4] = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.tau[4] = 3;
  p.alpha = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("reduce_bucket pass-through cases") {
  ReducePolicy never = ReducePolicy::defaults(RankVariant::Improved);
  never.style = TriggerStyle::Alpha;
  never.alpha = 1e9;
  auto all6 = enumerate_matchings(6);
  CHECK(reduce_bucket(all6, never, 8).size() == all6.size());
  std::vector<Matching> two{make_matching(2, {{0, 1}})};
  CHECK(reduce_bucket(two, always(RankVariant::Improved), 2).size() == 1);
  CHECK(reduce_bucket({}, always(RankVariant::Improved), 2).empty());
}

TEST_CASE("representativeness, exhaustive for l = 4") {
  auto all = enumerate_matchings(4);
  for (RankVariant kind : {RankVariant::Cut4t, RankVariant::Improved}) {
    for (std::uint32_t mask = 1; mask < 8; ++mask) {
      std::vector<Matching> fam;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) fam.push_back(all[i]);
      auto kept = reduce_bucket(fam, always(kind), 4);
      CHECK(represents(fam, kept, all));
      CHECK(kept.size() <= (kind == RankVariant::Improved ? 2u : 8u));
    }
  }
}

TEST_CASE("representativeness, random families for l = 6 and 8") {
  std::mt19937_64 rng(99);
  for (int l : {6, 8}) {
    auto all = enumerate_matchings(l);
    for (int rep = 0; rep < 60; ++rep) {
      std::vector<Matching> fam;
      for (const auto& m : all)
        if (rng() % 3 == 0) fam.push_back(m);
      if (fam.empty()) continue;
      for (RankVariant kind : {RankVariant::Cut4t, RankVariant::Improved}) {
        auto kept = reduce_bucket(fam, always(kind), l);
        CHECK(represents(fam, kept, all));
        const std::size_t cap =
            kind == RankVariant::Improved ? std::size_t{1} << (l / 2 - 1) : std::size_t{1} << (l - 1);
        CHECK(kept.size() <= cap);
        CHECK(std::is_sorted(kept.begin(), kept.end()));
      }
    }
  }
}

TEST_CASE("state_matching") {
  State s;
  // positions 0 and 3 paired, 1 has degree 2, 2 and 4 paired
  s.set_deg(0, 1);
  s.set_deg(1, 2);
  s.set_deg(2, 1);
  s.set_deg(3, 1);
  s.set_deg(4, 1);
  s.pair(0, 3);
  s.pair(2, 4);
  CHECK(state_matching(s, 5) == make_matching(4, {{0, 2}, {1, 3}}));
}

TEST_CASE("rank solvers agree with the oracle under aggressive pruning") {
  std::mt19937_64 rng(123);
  for (int rep = 0; rep < 200; ++rep) {
    std::uniform_int_distribution<int> size(3, 11);
    std::uniform_real_distribution<double> dens(0.2, 0.6);
    Graph g = testgraphs::random_connected(size(rng), dens(rng), rng);
    const bool truth = brute_force_decide(g);
    NiceDecomposition nd = make_nice(g, min_fill_decomposition(g));
    for (RankVariant kind : {RankVariant::Cut4t, RankVariant::Improved}) {
      for (const ReducePolicy& p : {ReducePolicy::defaults(kind), always(kind)}) {
        SolveOptions opts;
        opts.verify_witnesses = true;
        SolveResult r = solve_rank(g, nd, p, opts);
        CHECK(r.hamiltonian == truth);
      }
    }
  }
}
