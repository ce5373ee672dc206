#include "hamcycle/z4conv.hpp"

#include <bit>
#include <map>

namespace hamcycle {

namespace {

// Lifted coefficients live in Z/2^32. Every step up to the final division is
// ring arithmetic, so the residue of the exact integer 4^a * t is known, and
// bit 2a of it is t mod 2 as long as 2a < 32.
using Word = std::uint32_t;

/// Dense array of Gaussian-integer polynomials, one per point of Z4^a.
struct Lifted {
  int dims = 0;
  std::size_t points = 0;
  int coefs = 0;
  std::vector<Word> re, im;

  Lifted(int a, int ncoef)
      : dims(a), points(std::size_t{1} << (2 * a)), coefs(ncoef),
        re(points * ncoef, 0), im(points * ncoef, 0) {}

  Word* r(std::size_t pt) { return re.data() + pt * coefs; }
  Word* i(std::size_t pt) { return im.data() + pt * coefs; }
  const Word* r(std::size_t pt) const { return re.data() + pt * coefs; }
  const Word* i(std::size_t pt) const { return im.data() + pt * coefs; }
};

/// Length-4 DFT along every coordinate, root i (forward) or -i (inverse).
void transform(Lifted& a, bool inverse) {
  const int P = a.coefs;
  for (int c = 0; c < a.dims; ++c) {
    const std::size_t stride = std::size_t{1} << (2 * c);
    for (std::size_t hi = 0; hi < a.points; hi += 4 * stride)
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t b = hi + lo;
        Word *r0 = a.r(b), *r1 = a.r(b + stride), *r2 = a.r(b + 2 * stride),
             *r3 = a.r(b + 3 * stride);
        Word *i0 = a.i(b), *i1 = a.i(b + stride), *i2 = a.i(b + 2 * stride),
             *i3 = a.i(b + 3 * stride);
        for (int j = 0; j < P; ++j) {
          const Word sr02 = r0[j] + r2[j], dr02 = r0[j] - r2[j];
          const Word si02 = i0[j] + i2[j], di02 = i0[j] - i2[j];
          const Word sr13 = r1[j] + r3[j], dr13 = r1[j] - r3[j];
          const Word si13 = i1[j] + i3[j], di13 = i1[j] - i3[j];
          // i * (dr13 + i di13) = -di13 + i dr13
          const Word tr = inverse ? di13 : Word{0} - di13;
          const Word ti = inverse ? Word{0} - dr13 : dr13;
          r0[j] = sr02 + sr13;
          i0[j] = si02 + si13;
          r2[j] = sr02 - sr13;
          i2[j] = si02 - si13;
          r1[j] = dr02 + tr;
          i1[j] = di02 + ti;
          r3[j] = dr02 - tr;
          i3[j] = di02 - ti;
        }
      }
  }
}

/// Sets bit j of each value as coefficient j at its point.
void lift_into(Lifted& a, std::size_t pt, FieldElem v) {
  Word* row = a.r(pt);
  for (FieldElem bits = v; bits; bits &= bits - 1) row[std::countr_zero(bits)] += 1;
}

/// h += f * g pointwise, as polynomials with Gaussian-integer coefficients.
void multiply_accumulate(Lifted& h, const Lifted& f, const Lifted& g) {
  const int P = f.coefs;
  for (std::size_t pt = 0; pt < h.points; ++pt) {
    const Word *fr = f.r(pt), *fi = f.i(pt), *gr = g.r(pt), *gi = g.i(pt);
    Word* hr = h.r(pt);
    Word* hi = h.i(pt);
    for (int j = 0; j < P; ++j) {
      const Word a = fr[j], b = fi[j];
      if (!a && !b) continue;
      Word* hrj = hr + j;
      Word* hij = hi + j;
      for (int k = 0; k < P; ++k) {
        hrj[k] += a * gr[k] - b * gi[k];
        hij[k] += a * gi[k] + b * gr[k];
      }
    }
  }
}

/// Divides by 4^a, checks exactness, reduces mod 2 and mod Q.
FieldElem decode(const Lifted& h, std::size_t pt, const FieldSpec& spec) {
  const Word *hr = h.r(pt), *hi = h.i(pt);
  const int shift = 2 * h.dims;
  const Word low = (Word{1} << shift) - 1;
  std::uint64_t out_hi = 0, out_lo = 0;
  for (int j = 0; j < h.coefs; ++j) {
    if (hi[j] != 0) throw std::logic_error("lifted convolution left an imaginary part");
    if ((hr[j] & low) != 0) throw std::logic_error("inexact division by 4^m");
    if ((hr[j] >> shift) & 1) {
      if (j < 64)
        out_lo |= std::uint64_t{1} << j;
      else
        out_hi |= std::uint64_t{1} << (j - 64);
    }
  }
  return spec.reduce(out_hi, out_lo);
}

constexpr std::uint64_t kLow = 0x5555555555555555ull;
constexpr std::size_t kCacheBytes = std::size_t{256} << 20;

int total_degree(std::uint64_t key) {
  return std::popcount(key & kLow) + 2 * std::popcount((key >> 1) & ~key & kLow);
}

/// Digits of `key` at positions `coords`, packed as a point of Z4^a.
std::size_t gather(CCKey key, const std::vector<int>& coords) {
  std::size_t pt = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    pt |= static_cast<std::size_t>((key >> (2 * coords[i])) & 3u) << (2 * i);
  return pt;
}

CCKey scatter(std::size_t pt, const std::vector<int>& coords) {
  CCKey key = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    key |= static_cast<CCKey>((pt >> (2 * i)) & 3u) << (2 * coords[i]);
  return key;
}

/// Entries sharing their digits outside the transformed coordinates.
struct Group {
  CCKey fixed = 0;
  std::vector<std::pair<std::size_t, FieldElem>> points;  // transformed point, value
};

std::vector<Group> group_by_fixed(const CCTable& t, CCKey active_mask,
                                  const std::vector<int>& active) {
  std::map<CCKey, Group> groups;
  for (const auto& [k, v] : t.entries) {
    Group& g = groups[k & ~active_mask];
    g.fixed = k & ~active_mask;
    g.points.push_back({gather(k, active), v});
  }
  std::vector<Group> out;
  for (auto& [k, g] : groups) out.push_back(std::move(g));
  return out;
}

/// Forward transforms of one group, split by total degree of the point.
std::map<int, Lifted> transformed_slices(const Group& g, int a, int p) {
  std::map<int, Lifted> slices;
  for (const auto& [pt, v] : g.points) {
    const int r = total_degree(pt);
    auto it = slices.try_emplace(r, a, p).first;
    lift_into(it->second, pt, v);
  }
  for (auto& [r, l] : slices) transform(l, false);
  return slices;
}

void check_dims(int a) {
  if (a > kMaxFastDims)
    throw std::length_error("too many transformed coordinates (" + std::to_string(a) + " > " +
                            std::to_string(kMaxFastDims) + ")");
}

}  // namespace

Z4Table<FieldElem> naive_z4_convolution(const Z4Table<FieldElem>& f,
                                        const Z4Table<FieldElem>& g, const FieldSpec& spec) {
  return naive_z4_convolution(
      f, g, [](FieldElem x, FieldElem y) { return x ^ y; },
      [&spec](FieldElem x, FieldElem y) { return spec.mul(x, y); }, FieldElem{0});
}

Z4Table<FieldElem> fast_z4_convolution(const Z4Table<FieldElem>& f,
                                       const Z4Table<FieldElem>& g, const FieldSpec& spec) {
  if (f.m != g.m) throw std::invalid_argument("convolution of tables of different dimension");
  check_dims(f.m);
  const int m = f.m, p = spec.p();
  Lifted lf(m, p), lg(m, p);
  for (std::size_t x = 0; x < f.size(); ++x) {
    lift_into(lf, x, f.values[x]);
    lift_into(lg, x, g.values[x]);
  }
  transform(lf, false);
  transform(lg, false);
  Lifted h(m, 2 * p - 1);
  multiply_accumulate(h, lf, lg);
  transform(h, true);
  Z4Table<FieldElem> out(m);
  for (std::size_t pt = 0; pt < h.points; ++pt) out.values[pt] = decode(h, pt, spec);
  return out;
}

CCTable cc_join_fast(const CCTable& a, const CCTable& b, const FieldSpec& spec) {
  if (a.bag != b.bag) throw std::invalid_argument("join of tables with different bags");
  const int m = static_cast<int>(a.bag.size());
  const int p = spec.p();
  CCTable out;
  out.bag = a.bag;
  if (a.entries.empty() || b.entries.empty()) return out;

  // A coordinate where one side is always D0 combines trivially; only the
  // coordinates used by both sides go through the transform.
  CCKey used_a = 0, used_b = 0;
  for (const auto& [k, v] : a.entries) used_a |= (k | (k >> 1)) & kLow;
  for (const auto& [k, v] : b.entries) used_b |= (k | (k >> 1)) & kLow;
  std::vector<int> active;
  for (int c = 0; c < m; ++c)
    if ((used_a & used_b) >> (2 * c) & 1) active.push_back(c);
  const int dims = static_cast<int>(active.size());
  check_dims(dims);
  const CCKey active_mask = scatter((std::size_t{1} << (2 * dims)) - 1, active);

  auto groups_a = group_by_fixed(a, active_mask, active);
  auto groups_b = group_by_fixed(b, active_mask, active);
  if (groups_b.size() > groups_a.size()) std::swap(groups_a, groups_b);
  // cache the inner side's transforms unless that would take too much memory
  const std::size_t slice_bytes = (std::size_t{1} << (2 * dims)) * p * 2 * sizeof(Word);
  const bool cache = groups_b.size() * (2 * dims + 1) * slice_bytes <= kCacheBytes;
  std::vector<std::map<int, Lifted>> cached;
  if (cache)
    for (const Group& gb : groups_b) cached.push_back(transformed_slices(gb, dims, p));

  for (const Group& ga : groups_a) {
    const auto slices_a = transformed_slices(ga, dims, p);
    for (std::size_t ib = 0; ib < groups_b.size(); ++ib) {
      const auto fresh = cache ? std::map<int, Lifted>{} : transformed_slices(groups_b[ib], dims, p);
      const auto& slices_b = cache ? cached[ib] : fresh;
      const CCKey fixed = ga.fixed | groups_b[ib].fixed;
      // a pair is a valid combination iff the total degrees add up
      for (int s = 0; s <= 2 * dims; ++s) {
        Lifted h(dims, 2 * p - 1);
        bool any = false;
        for (const auto& [ra, la] : slices_a)
          if (auto it = slices_b.find(s - ra); it != slices_b.end()) {
            multiply_accumulate(h, la, it->second);
            any = true;
          }
        if (!any) continue;
        transform(h, true);
        for (std::size_t pt = 0; pt < h.points; ++pt) {
          if (total_degree(pt) != s) continue;
          if (FieldElem v = decode(h, pt, spec)) out.entries.push_back({fixed | scatter(pt, active), v});
        }
      }
    }
  }
  out.normalize();
  return out;
}

}  // namespace hamcycle
