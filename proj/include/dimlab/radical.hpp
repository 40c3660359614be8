#pragma once

// Exact arithmetic in Q(2^{1/Q}). Every construction length is 2^{-e} with
// rational e, and every endpoint is a finite sum of products of such powers,
// so all positions live in one of these fields. A value is stored as
//
//     2^{-scale} * sum_{d < Q} z_d * theta^d,   theta = 2^{-1/Q},
//
// with integer z_d. Since x^Q - 2 is irreducible the coefficients are unique,
// which makes equality and sign decisions exact.

#include "dimlab/exact.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace dimlab {

class RadicalNumber {
 public:
  RadicalNumber() : order_(1), scale_(0), coeffs_(1) {}
  explicit RadicalNumber(const Integer& value);
  explicit RadicalNumber(long value) : RadicalNumber(Integer(value)) {}

  /// 2^{-e} for rational e.
  static RadicalNumber pow2(const Rational& e);

  std::uint64_t order() const { return order_; }
  std::int64_t scale() const { return scale_; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  /// Exact sign; refines an enclosure until it excludes zero.
  int sign() const;

  RadicalNumber operator-() const;
  RadicalNumber operator+(const RadicalNumber& other) const;
  RadicalNumber operator-(const RadicalNumber& other) const;
  RadicalNumber operator*(const RadicalNumber& other) const;
  RadicalNumber& operator+=(const RadicalNumber& other) { return *this = *this + other; }
  RadicalNumber& operator-=(const RadicalNumber& other) { return *this = *this - other; }

  /// Multiplies by 2^{-e}.
  RadicalNumber scaled(const Rational& e) const;

  bool operator==(const RadicalNumber& other) const { return (*this - other).is_zero(); }
  std::strong_ordering operator<=>(const RadicalNumber& other) const;

  /// Outward-rounded enclosure at the given working precision.
  Enclosure enclose(mpfr_prec_t precision) const;
  double approx() const;

  /// Smallest integer >= value and largest integer <= value, decided exactly.
  Integer ceil() const;
  Integer floor() const;

  /// Same value expressed in an order that is a multiple of the current one.
  RadicalNumber lifted(std::uint64_t order) const;

  /// Text that is equal for two values iff the values are equal, provided
  /// both are keyed in the same order (a common multiple of theirs).
  std::string canonical_key(std::uint64_t order) const;

  static void set_precision_limit(mpfr_prec_t bits);
  static mpfr_prec_t precision_limit();

 private:
  RadicalNumber(std::uint64_t order, std::int64_t scale, std::vector<Integer> coeffs);
  void canonicalize();
  std::size_t max_coefficient_bits() const;

  std::uint64_t order_;
  std::int64_t scale_;
  std::vector<Integer> coeffs_;
};

}  // namespace dimlab
