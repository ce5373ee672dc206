#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hamcycle/cutcount.hpp"
#include "hamcycle/gf2p.hpp"

namespace hamcycle {

/// Dense function Z4^m -> T. Index sum_i d_i * 4^i, i.e. digit i at bits 2i..2i+1.
template <class T>
struct Z4Table {
  int m = 0;
  std::vector<T> values;

  Z4Table() = default;
  explicit Z4Table(int dims, T zero = T{})
      : m(dims), values(std::size_t{1} << (2 * dims), zero) {}
  std::size_t size() const { return values.size(); }
};

/// Digit-wise x + y mod 4 on packed indices.
inline std::uint64_t z4_add(std::uint64_t x, std::uint64_t y) {
  constexpr std::uint64_t kL = 0x5555555555555555ull, kH = kL << 1;
  const std::uint64_t carry = (x & y & kL) << 1;
  return ((x ^ y) & kL) | ((x ^ y ^ carry) & kH);
}
/// Digit-wise -y mod 4.
inline std::uint64_t z4_neg(std::uint64_t y) { return y ^ ((y & 0x5555555555555555ull) << 1); }

/// Defining double sum: (f*g)(x) = sum_y f(y) g(x - y).
template <class T, class Add, class Mul>
Z4Table<T> naive_z4_convolution(const Z4Table<T>& f, const Z4Table<T>& g, Add add, Mul mul,
                                T zero = T{}) {
  if (f.m != g.m) throw std::invalid_argument("convolution of tables of different dimension");
  Z4Table<T> out(f.m, zero);
  for (std::uint64_t y = 0; y < f.size(); ++y)
    for (std::uint64_t z = 0; z < g.size(); ++z) {
      auto& slot = out.values[z4_add(y, z)];
      slot = add(slot, mul(f.values[y], g.values[z]));
    }
  return out;
}

Z4Table<FieldElem> naive_z4_convolution(const Z4Table<FieldElem>& f,
                                        const Z4Table<FieldElem>& g, const FieldSpec& spec);

/// Convolution over GF(2^p) through the Z4 Fourier transform on lifted
/// integer polynomials, with coefficient arithmetic modulo 2^32. Equal to the
/// naive convolution; throws std::logic_error if an exactness check fails.
Z4Table<FieldElem> fast_z4_convolution(const Z4Table<FieldElem>& f,
                                       const Z4Table<FieldElem>& g, const FieldSpec& spec);

/// Join through fast_z4_convolution split by total degree. Equal to cc_join_naive.
CCTable cc_join_fast(const CCTable& a, const CCTable& b, const FieldSpec& spec);

/// Most coordinates either fast routine will transform; more throw std::length_error.
/// The join only transforms coordinates that both tables use.
inline constexpr int kMaxFastDims = 7;

}  // namespace hamcycle
