#include "hamcycle/gf2p.hpp"

#include <bit>
#include <stdexcept>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace hamcycle {

namespace {

using u128 = unsigned __int128;

int degree(std::uint64_t poly) { return 63 - std::countl_zero(poly); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  while (a && degree(a) >= dm) a ^= m << (degree(a) - dm);
  return a;
}

bool irreducible(std::uint64_t q) {
  const int d = degree(q);
  for (std::uint64_t f = 2; degree(f) <= d / 2; ++f)
    if (poly_mod(q, f) == 0) return false;
  return true;
}

using ClmulFn = void (*)(std::uint64_t, std::uint64_t, std::uint64_t&, std::uint64_t&);

ClmulFn pick_clmul() { return clmul_hw_available() ? clmul_hw : clmul_portable; }

}  // namespace

void clmul_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  std::uint64_t h = 0, l = 0;
  while (b) {
    int i = std::countr_zero(b);
    b &= b - 1;
    l ^= a << i;
    if (i) h ^= a >> (64 - i);
  }
  hi = h;
  lo = l;
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse4.1"))) void clmul_hw(std::uint64_t a, std::uint64_t b,
                                                        std::uint64_t& hi, std::uint64_t& lo) {
  __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  hi = static_cast<std::uint64_t>(_mm_extract_epi64(r, 1));
}

bool clmul_hw_available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
}
#else
void clmul_hw(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  clmul_portable(a, b, hi, lo);
}
bool clmul_hw_available() { return false; }
#endif

void clmul(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  static const ClmulFn fn = pick_clmul();
  fn(a, b, hi, lo);
}

FieldSpec::FieldSpec(int p, std::uint64_t q_low) : p_(p), q_low_(q_low) {
  if (p < 1 || p > 64) throw std::invalid_argument("field degree must be in [1, 64]");
  if (q_low & ~mask()) throw std::invalid_argument("modulus low part exceeds degree");
  if (p == 64 && degree(q_low) >= 32)
    throw std::invalid_argument("degree-64 modulus needs a sparse low part");
  if (p <= 16 && !irreducible((std::uint64_t{1} << p) | q_low))
    throw std::invalid_argument("modulus is reducible");
}

FieldElem FieldSpec::reduce(std::uint64_t hi, std::uint64_t lo) const {
  if (p_ == 64) {
    // x^64 = q_low: fold the high word down until it vanishes
    while (hi) {
      std::uint64_t h2, l2;
      clmul(hi, q_low_, h2, l2);
      lo ^= l2;
      hi = h2;
    }
    return lo;
  }
  u128 v = (u128{hi} << 64) | lo;
  const u128 q = (u128{1} << p_) | q_low_;
  for (int i = 2 * p_ - 2; i >= p_; --i)
    if ((v >> i) & 1) v ^= q << (i - p_);
  return static_cast<FieldElem>(v);
}

FieldElem FieldSpec::mul(FieldElem a, FieldElem b) const {
  std::uint64_t hi, lo;
  clmul(a, b, hi, lo);
  return reduce(hi, lo);
}

FieldElem FieldSpec::pow(FieldElem a, std::uint64_t e) const {
  FieldElem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem FieldSpec::inv(FieldElem a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  // a^(2^p - 2)
  const std::uint64_t order = p_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p_) - 1;
  return pow(a, order - 1);
}

FieldElem mul_reference(const FieldSpec& f, FieldElem a, FieldElem b) {
  const int p = f.p();
  const u128 q = (u128{1} << p) | f.q_low();
  u128 acc = 0;
  for (int i = 0; i < p; ++i)
    if ((b >> i) & 1) acc ^= u128{a} << i;
  for (int i = 2 * p - 2; i >= p; --i)
    if ((acc >> i) & 1) acc ^= q << (i - p);
  return static_cast<FieldElem>(acc);
}

}  // namespace hamcycle
