#include "dimlab/radical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dimlab {

namespace {

mpfr_prec_t g_precision_limit = 1 << 18;

struct ThetaPowers {
  std::vector<BigFloat> lo;
  std::vector<BigFloat> hi;
};

// Enclosures of theta^d = 2^{-d/Q} for d < Q at one working precision.
const ThetaPowers& theta_powers(std::uint64_t order, mpfr_prec_t precision) {
  thread_local std::map<std::pair<std::uint64_t, mpfr_prec_t>, ThetaPowers> cache;
  auto key = std::make_pair(order, precision);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  ThetaPowers powers;
  BigFloat base(precision);
  for (std::uint64_t d = 0; d < order; ++d) {
    BigFloat lo(precision), hi(precision);
    mpfr_set_ui_2exp(base.get(), 1, -static_cast<long>(d), MPFR_RNDN);
    mpfr_rootn_ui(lo.get(), base.get(), static_cast<unsigned long>(order), MPFR_RNDD);
    mpfr_rootn_ui(hi.get(), base.get(), static_cast<unsigned long>(order), MPFR_RNDU);
    powers.lo.push_back(std::move(lo));
    powers.hi.push_back(std::move(hi));
  }
  return cache.emplace(key, std::move(powers)).first->second;
}

}  // namespace

void RadicalNumber::set_precision_limit(mpfr_prec_t bits) { g_precision_limit = bits; }
mpfr_prec_t RadicalNumber::precision_limit() { return g_precision_limit; }

RadicalNumber::RadicalNumber(const Integer& value) : order_(1), scale_(0), coeffs_{value} {
  canonicalize();
}

RadicalNumber::RadicalNumber(std::uint64_t order, std::int64_t scale, std::vector<Integer> coeffs)
    : order_(order), scale_(scale), coeffs_(std::move(coeffs)) {
  canonicalize();
}

RadicalNumber RadicalNumber::pow2(const Rational& e) {
  Rational canon = e;
  canon.canonicalize();
  if (!canon.get_den().fits_ulong_p()) throw Error(ErrorKind::OutOfRange, "exponent denominator too large");
  const std::uint64_t order = canon.get_den().get_ui();
  const Integer whole = floor_of(canon);
  if (!whole.fits_slong_p()) throw Error(ErrorKind::OutOfRange, "exponent too large");
  const Integer rem = canon.get_num() - whole * canon.get_den();
  std::vector<Integer> coeffs(order);
  coeffs[rem.get_ui()] = 1;
  return RadicalNumber(order, whole.get_si(), std::move(coeffs));
}

void RadicalNumber::canonicalize() {
  mp_bitcnt_t shift = ~mp_bitcnt_t{0};
  for (const auto& z : coeffs_) {
    if (z != 0) shift = std::min(shift, mpz_scan1(z.get_mpz_t(), 0));
  }
  if (shift == ~mp_bitcnt_t{0}) {
    scale_ = 0;
    return;
  }
  if (shift == 0) return;
  for (auto& z : coeffs_) mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), shift);
  scale_ -= static_cast<std::int64_t>(shift);
}

bool RadicalNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& z) { return z == 0; });
}

std::size_t RadicalNumber::max_coefficient_bits() const {
  std::size_t bits = 1;
  for (const auto& z : coeffs_) bits = std::max(bits, mpz_sizeinbase(z.get_mpz_t(), 2));
  return bits;
}

RadicalNumber RadicalNumber::lifted(std::uint64_t order) const {
  if (order == order_) return *this;
  if (order % order_ != 0) throw Error(ErrorKind::OutOfRange, "lift to a non-multiple order");
  const std::uint64_t step = order / order_;
  std::vector<Integer> coeffs(order);
  for (std::uint64_t d = 0; d < order_; ++d) coeffs[d * step] = coeffs_[d];
  RadicalNumber out;
  out.order_ = order;
  out.scale_ = scale_;
  out.coeffs_ = std::move(coeffs);
  return out;
}

std::string RadicalNumber::canonical_key(std::uint64_t order) const {
  const RadicalNumber v = lifted(order);
  std::string key = std::to_string(v.scale_);
  for (const auto& z : v.coeffs_) {
    key += ',';
    key += z.get_str(16);
  }
  return key;
}

RadicalNumber RadicalNumber::operator-() const {
  RadicalNumber out = *this;
  for (auto& z : out.coeffs_) z = -z;
  return out;
}

RadicalNumber RadicalNumber::operator+(const RadicalNumber& other) const {
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  const std::uint64_t order = std::lcm(order_, other.order_);
  RadicalNumber a = lifted(order);
  RadicalNumber b = other.lifted(order);
  const std::int64_t scale = std::max(a.scale_, b.scale_);
  std::vector<Integer> coeffs(order);
  for (std::uint64_t d = 0; d < order; ++d) {
    Integer x, y;
    mpz_mul_2exp(x.get_mpz_t(), a.coeffs_[d].get_mpz_t(), static_cast<mp_bitcnt_t>(scale - a.scale_));
    mpz_mul_2exp(y.get_mpz_t(), b.coeffs_[d].get_mpz_t(), static_cast<mp_bitcnt_t>(scale - b.scale_));
    coeffs[d] = x + y;
  }
  return RadicalNumber(order, scale, std::move(coeffs));
}

RadicalNumber RadicalNumber::operator-(const RadicalNumber& other) const { return *this + (-other); }

RadicalNumber RadicalNumber::operator*(const RadicalNumber& other) const {
  if (is_zero() || other.is_zero()) return RadicalNumber();
  const std::uint64_t order = std::lcm(order_, other.order_);
  RadicalNumber a = lifted(order);
  RadicalNumber b = other.lifted(order);
  // theta^Q = 1/2: fold high powers back with a factor 1/2, carried by one
  // extra unit of scale on the whole product.
  std::vector<Integer> coeffs(order);
  for (std::uint64_t i = 0; i < order; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::uint64_t j = 0; j < order; ++j) {
      if (b.coeffs_[j] == 0) continue;
      Integer term = a.coeffs_[i] * b.coeffs_[j];
      if (i + j < order) {
        coeffs[i + j] += 2 * term;
      } else {
        coeffs[i + j - order] += term;
      }
    }
  }
  return RadicalNumber(order, a.scale_ + b.scale_ + 1, std::move(coeffs));
}

RadicalNumber RadicalNumber::scaled(const Rational& e) const { return *this * pow2(e); }

Enclosure RadicalNumber::enclose(mpfr_prec_t precision) const {
  Enclosure out(precision);
  const ThetaPowers& powers = theta_powers(order_, precision);
  BigFloat term(precision);
  for (std::uint64_t d = 0; d < order_; ++d) {
    const Integer& z = coeffs_[d];
    const int s = sgn(z);
    if (s == 0) continue;
    const BigFloat& for_lo = s > 0 ? powers.lo[d] : powers.hi[d];
    const BigFloat& for_hi = s > 0 ? powers.hi[d] : powers.lo[d];
    mpfr_mul_z(term.get(), for_lo.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_add(out.lo.get(), out.lo.get(), term.get(), MPFR_RNDD);
    mpfr_mul_z(term.get(), for_hi.get(), z.get_mpz_t(), MPFR_RNDU);
    mpfr_add(out.hi.get(), out.hi.get(), term.get(), MPFR_RNDU);
  }
  mpfr_mul_2si(out.lo.get(), out.lo.get(), -static_cast<long>(scale_), MPFR_RNDD);
  mpfr_mul_2si(out.hi.get(), out.hi.get(), -static_cast<long>(scale_), MPFR_RNDU);
  return out;
}

int RadicalNumber::sign() const {
  if (is_zero()) return 0;
  for (auto prec = static_cast<mpfr_prec_t>(max_coefficient_bits() + 64); prec <= g_precision_limit; prec *= 2) {
    const auto enc = enclose(prec);
    if (mpfr_sgn(enc.lo.get()) > 0) return 1;
    if (mpfr_sgn(enc.hi.get()) < 0) return -1;
  }
  throw Error(ErrorKind::PrecisionBudgetExceeded, "sign not resolved within the precision limit");
}

std::strong_ordering RadicalNumber::operator<=>(const RadicalNumber& other) const {
  const int s = (*this - other).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double RadicalNumber::approx() const {
  const auto enc = enclose(64);
  return mpfr_get_d(enc.lo.get(), MPFR_RNDN) / 2 + mpfr_get_d(enc.hi.get(), MPFR_RNDN) / 2;
}

Integer RadicalNumber::ceil() const {
  const std::int64_t magnitude = std::max<std::int64_t>(0, -scale_);
  const auto enc = enclose(static_cast<mpfr_prec_t>(max_coefficient_bits() + magnitude + 64));
  Integer k;
  mpfr_get_z(k.get_mpz_t(), enc.lo.get(), MPFR_RNDD);
  while (*this > RadicalNumber(k)) ++k;
  while (*this <= RadicalNumber(Integer(k - 1))) --k;
  return k;
}

Integer RadicalNumber::floor() const { return -(-*this).ceil(); }

}  // namespace dimlab
