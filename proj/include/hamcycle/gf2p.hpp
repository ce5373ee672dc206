#pragma once

#include <cstdint>
#include <random>

namespace hamcycle {

/// Element of GF(2^p): bit i is the coefficient of x^i.
using FieldElem = std::uint64_t;

/// GF(2^p) for 1 <= p <= 64, modulo Q = x^p + (low bits of q_low).
class FieldSpec {
 public:
  /// Throws std::invalid_argument for p outside [1, 64], or when p <= 16 and
  /// Q is reducible.
  FieldSpec(int p, std::uint64_t q_low);

  /// x^64 + x^4 + x^3 + x + 1.
  static FieldSpec gf2_64() { return FieldSpec(64, 0x1B); }
  /// x^8 + x^4 + x^3 + x + 1.
  static FieldSpec gf2_8() { return FieldSpec(8, 0x1B); }
  /// x^16 + x^5 + x^3 + x + 1.
  static FieldSpec gf2_16() { return FieldSpec(16, 0x2B); }

  int p() const { return p_; }
  std::uint64_t q_low() const { return q_low_; }
  /// Mask of valid element bits.
  std::uint64_t mask() const { return p_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p_) - 1; }

  FieldElem add(FieldElem a, FieldElem b) const { return a ^ b; }
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  FieldElem inv(FieldElem a) const;
  /// Reduces a product of two elements (degree < 2p - 1) modulo Q.
  FieldElem reduce(std::uint64_t hi, std::uint64_t lo) const;
  FieldElem random_elem(std::mt19937_64& rng) const { return rng() & mask(); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  int p_;
  std::uint64_t q_low_;
};

/// 64x64 -> 128 carry-less product; hi receives bits 64..127.
void clmul_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo);
/// Same product via the PCLMULQDQ instruction. Only call when
/// clmul_hw_available() is true.
void clmul_hw(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo);
bool clmul_hw_available();
/// Dispatches to the hardware path when available, chosen once at startup.
void clmul(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo);

/// Shift-and-xor multiply with bit-serial reduction, independent of clmul.
FieldElem mul_reference(const FieldSpec& f, FieldElem a, FieldElem b);

}  // namespace hamcycle
