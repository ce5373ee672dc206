#include "hamcycle/matchings.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hamcycle {

Matching make_matching(int l, const std::vector<std::pair<int, int>>& pairs) {
  if (l < 0 || l % 2 != 0 || static_cast<int>(pairs.size()) * 2 != l)
    throw std::invalid_argument("pairs do not cover an even ground set");
  Matching m(l, 0xFF);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= l || b >= l || a == b || m[a] != 0xFF || m[b] != 0xFF)
      throw std::invalid_argument("not a perfect matching");
    m[a] = static_cast<std::uint8_t>(b);
    m[b] = static_cast<std::uint8_t>(a);
  }
  return m;
}

bool is_single_cycle(const Matching& e, const Matching& m) {
  if (e.size() != m.size()) throw std::invalid_argument("matchings on different ground sets");
  if (e.empty()) return false;
  std::size_t visited = 0;
  int cur = 0;
  do {
    cur = m[e[cur]];
    visited += 2;
  } while (cur != 0);
  return visited == e.size();
}

namespace {

void enumerate_rec(Matching& cur, std::vector<Matching>& out) {
  int first = -1;
  for (int i = 0; i < static_cast<int>(cur.size()); ++i)
    if (cur[i] == 0xFF) {
      first = i;
      break;
    }
  if (first < 0) {
    out.push_back(cur);
    return;
  }
  for (int j = first + 1; j < static_cast<int>(cur.size()); ++j) {
    if (cur[j] != 0xFF) continue;
    cur[first] = static_cast<std::uint8_t>(j);
    cur[j] = static_cast<std::uint8_t>(first);
    enumerate_rec(cur, out);
    cur[first] = cur[j] = 0xFF;
  }
}

void check_even(int l) {
  if (l < 0 || l % 2 != 0) throw std::invalid_argument("matching size must be even");
}

}  // namespace

std::vector<Matching> enumerate_matchings(int l) {
  check_even(l);
  std::vector<Matching> out;
  Matching cur(l, 0xFF);
  enumerate_rec(cur, out);
  return out;
}

BitRow cut_vector(const Matching& e) {
  const int l = static_cast<int>(e.size());
  check_even(l);
  if (l == 0) throw std::invalid_argument("cut vector of an empty matching");
  if (l > 24) throw std::invalid_argument("cut vector too long");
  const std::size_t cuts = std::size_t{1} << (l - 1);
  BitRow row(cuts);
  // side(j) = bit j-1 of the cut index, side(0) = 0
  auto side = [](std::size_t cut, int j) -> unsigned {
    return j == 0 ? 0u : static_cast<unsigned>((cut >> (j - 1)) & 1u);
  };
  for (std::size_t cut = 0; cut < cuts; ++cut) {
    bool ok = true;
    for (int i = 0; i < l && ok; ++i)
      if (i < e[i]) ok = side(cut, i) == side(cut, e[i]);
    if (ok) row.set(cut);
  }
  return row;
}

const BasisFamily& compute_basis(int l) {
  check_even(l);
  if (l > kBasisCap) throw std::invalid_argument("matchings basis size cap exceeded");
  static std::mutex mu;
  static std::map<int, BasisFamily> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(l); it != cache.end()) return it->second;

  BasisFamily fam;
  fam.l = l;
  if (l > 0) {
    const auto all = enumerate_matchings(l);
    const std::size_t target = std::size_t{1} << (l / 2 - 1);
    F2Basis basis;
    for (const Matching& row_m : all) {
      BitRow row(all.size());
      for (std::size_t j = 0; j < all.size(); ++j)
        if (is_single_cycle(row_m, all[j])) row.set(j);
      if (basis.insert(std::move(row))) fam.matchings.push_back(row_m);
      if (fam.matchings.size() == target) break;
    }
  }
  return cache.emplace(l, std::move(fam)).first->second;
}

BitRow improved_vector(const Matching& e, const BasisFamily& basis) {
  if (static_cast<int>(e.size()) != basis.l)
    throw std::invalid_argument("matching does not fit the basis");
  BitRow row(basis.matchings.size());
  for (std::size_t i = 0; i < basis.matchings.size(); ++i)
    if (is_single_cycle(e, basis.matchings[i])) row.set(i);
  return row;
}

std::size_t single_cycle_rank(int l) {
  const auto all = enumerate_matchings(l);
  F2Basis basis;
  for (const Matching& a : all) {
    BitRow row(all.size());
    for (std::size_t j = 0; j < all.size(); ++j)
      if (is_single_cycle(a, all[j])) row.set(j);
    basis.insert(std::move(row));
  }
  return basis.rank();
}

}  // namespace hamcycle
