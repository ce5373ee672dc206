#include "hamcycle/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace hamcycle {

void GenParams::validate() const {
  if (a <= 0 || a % 4 != 2) throw std::invalid_argument("row count must be 2 mod 4");
  if (b < 1) throw std::invalid_argument("column count must be positive");
  if (a * b < 3) throw std::invalid_argument("instance needs at least three vertices");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("chord probability must be in [0, 1]");
}

GeneratedInstance generate(const GenParams& params) {
  params.validate();
  const int a = params.a, b = params.b, half = a / 2;
  auto v = [b](int i, int j) { return grid_vertex(b, i, j); };

  std::vector<Edge> base;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j < b; ++j) base.emplace_back(v(i, j), v(i, j + 1));
  for (int i = 1; i <= half; ++i) base.emplace_back(v(i, 1), v(i + half, 1));
  for (int i = 2; i <= a; i += 2) base.emplace_back(v(i - 1, b), v(i, b));

  GeneratedInstance out;
  std::vector<Edge> all = base;
  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution coin(params.p);
  for (int i = 1; i <= half; ++i)
    for (int i2 = i + 1; i2 <= half; ++i2)
      for (int j = 1; j <= b; ++j)
        if (coin(rng)) {
          all.emplace_back(v(i, j), v(i2, j));
          ++out.chords_drawn;
        }
  const int n = a * b;
  out.graph = Graph(n, all);

  // the base edges form one cycle; walk it from vertex (1,1)
  const Graph ring(n, base);
  Vertex prev = 0, cur = v(1, 1);
  do {
    out.planted_cycle.vertices.push_back(cur);
    auto nb = ring.neighbors(cur);
    Vertex next = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = next;
  } while (cur != v(1, 1) && static_cast<int>(out.planted_cycle.vertices.size()) <= n);

  // bags of a+1 consecutive vertices in column-major order, on a path
  auto colmajor = [&](int s) { return v((s - 1) % a + 1, (s + a - 1) / a); };
  if (b == 1) {
    std::vector<Vertex> bag;
    for (int s = 1; s <= a; ++s) bag.push_back(colmajor(s));
    std::sort(bag.begin(), bag.end());
    out.td.bags.push_back(std::move(bag));
  } else {
    for (int r = 1; r <= n - a; ++r) {
      std::vector<Vertex> bag;
      for (int s = r; s <= r + a; ++s) bag.push_back(colmajor(s));
      std::sort(bag.begin(), bag.end());
      out.td.bags.push_back(std::move(bag));
      if (r > 1) out.td.tree_edges.emplace_back(r - 2, r - 1);
    }
  }
  return out;
}

ExpectedParams expected_params_report(const GenParams& params) {
  params.validate();
  ExpectedParams e;
  e.n = params.a * params.b;
  const double half = params.a / 2;
  e.edges = static_cast<double>(params.a) * params.b +
            params.p * params.b * half * (half - 1) / 2.0;
  const double pairs = static_cast<double>(e.n) * (e.n - 1) / 2.0;
  e.density = pairs > 0 ? e.edges / pairs : 0.0;
  return e;
}

}  // namespace hamcycle
