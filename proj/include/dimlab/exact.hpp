#pragma once

// Exact integer/rational aliases, error type, MPFR RAII wrapper and the
// base-2 logarithmic quantities used by counting results and estimates.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dimlab {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  ChainViolation,
  OutOfRange,
  UnsupportedGenerator,
  SequenceHorizonExceeded,
  RootHasNoParent,
  EnumerationCapExceeded,
  PrecisionBudgetExceeded,
  AmbiguousLengthRule,
  ScaleOutOfRange,
  InsufficientDepth,
  Parse,
  Config,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parses "p/q", "p" or a finite decimal such as "0.3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers are rendered as "p/1".
std::string to_fraction_string(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Least common multiple of two positive machine integers.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Small RAII owner of an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

/// Closed enclosure [lo, hi] with outward-rounded endpoints.
struct Enclosure {
  BigFloat lo;
  BigFloat hi;

  explicit Enclosure(mpfr_prec_t precision = 128) : lo(precision), hi(precision) {}

  bool contains_zero() const;
  bool is_point() const;
  /// Rigorous double bounds (lo rounded down, hi rounded up).
  std::pair<double, double> to_doubles() const;
};

/// A real number of the form offset + log2(argument) with argument > 0.
/// Powers of two are folded into the offset so that exact values carry
/// argument == 1.
class Log2Value {
 public:
  Log2Value() = default;
  explicit Log2Value(Rational offset, Rational argument = 1);

  static Log2Value of_integer(const Integer& count);

  const Rational& offset() const { return offset_; }
  const Rational& argument() const { return argument_; }
  bool is_rational() const { return argument_ == 1; }

  Log2Value operator+(const Log2Value& other) const;
  Log2Value operator-(const Log2Value& other) const;

  /// Rigorous enclosure at the requested working precision.
  Enclosure enclose(mpfr_prec_t precision = 128) const;
  std::pair<double, double> bounds() const { return enclose().to_doubles(); }
  double approx() const;

  /// Certified three-way comparison.
  std::partial_ordering compare(const Log2Value& other) const;

  std::string to_string() const;

 private:
  void normalize();

  Rational offset_{0};
  Rational argument_{1};
};

/// The quotient numerator / denominator with a positive rational denominator;
/// this is the shape of every log N / (-log delta) estimate.
struct Quotient {
  Log2Value numerator;
  Rational denominator{1};

  bool is_rational() const { return numerator.is_rational(); }
  Rational exact() const;
  std::pair<double, double> bounds() const;
  double approx() const;
};

}  // namespace dimlab
