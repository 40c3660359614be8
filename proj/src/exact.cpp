#include "dimlab/exact.hpp"

#include <cctype>
#include <numeric>

namespace dimlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ChainViolation: return "ChainViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorKind::SequenceHorizonExceeded: return "SequenceHorizonExceeded";
    case ErrorKind::RootHasNoParent: return "RootHasNoParent";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::PrecisionBudgetExceeded: return "PrecisionBudgetExceeded";
    case ErrorKind::AmbiguousLengthRule: return "AmbiguousLengthRule";
    case ErrorKind::ScaleOutOfRange: return "ScaleOutOfRange";
    case ErrorKind::InsufficientDepth: return "InsufficientDepth";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
    Integer d(den, 10);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
    result = Rational(Integer(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
      throw Error(ErrorKind::Parse, "malformed decimal '" + s + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rational(Integer(whole + frac, 10), scale);
  } else {
    if (!all_digits(body)) throw Error(ErrorKind::Parse, "malformed integer '" + s + "'");
    result = Rational(Integer(body, 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_fraction_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Integer floor_of(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

bool Enclosure::contains_zero() const {
  return mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0;
}

bool Enclosure::is_point() const { return mpfr_equal_p(lo.get(), hi.get()) != 0; }

std::pair<double, double> Enclosure::to_doubles() const {
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

// ---------------------------------------------------------------------------
// Log2Value

Log2Value::Log2Value(Rational offset, Rational argument)
    : offset_(std::move(offset)), argument_(std::move(argument)) {
  if (argument_ <= 0) throw Error(ErrorKind::OutOfRange, "log2 of a non-positive argument");
  normalize();
}

Log2Value Log2Value::of_integer(const Integer& count) { return Log2Value(0, Rational(count)); }

void Log2Value::normalize() {
  argument_.canonicalize();
  Integer num = argument_.get_num();
  Integer den = argument_.get_den();
  const auto tz_num = static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
  const auto tz_den = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
  mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(tz_num));
  mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(tz_den));
  offset_ += Rational(tz_num - tz_den);
  argument_ = Rational(num, den);
  argument_.canonicalize();
}

Log2Value Log2Value::operator+(const Log2Value& other) const {
  return Log2Value(offset_ + other.offset_, argument_ * other.argument_);
}

Log2Value Log2Value::operator-(const Log2Value& other) const {
  return Log2Value(offset_ - other.offset_, argument_ / other.argument_);
}

Enclosure Log2Value::enclose(mpfr_prec_t precision) const {
  Enclosure out(precision);
  BigFloat off_lo(precision), off_hi(precision);
  mpfr_set_q(off_lo.get(), offset_.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(off_hi.get(), offset_.get_mpq_t(), MPFR_RNDU);
  if (argument_ == 1) {
    mpfr_set(out.lo.get(), off_lo.get(), MPFR_RNDD);
    mpfr_set(out.hi.get(), off_hi.get(), MPFR_RNDU);
    return out;
  }
  BigFloat arg_lo(precision), arg_hi(precision);
  mpfr_set_q(arg_lo.get(), argument_.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(arg_hi.get(), argument_.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(arg_lo.get(), arg_lo.get(), MPFR_RNDD);
  mpfr_log2(arg_hi.get(), arg_hi.get(), MPFR_RNDU);
  mpfr_add(out.lo.get(), off_lo.get(), arg_lo.get(), MPFR_RNDD);
  mpfr_add(out.hi.get(), off_hi.get(), arg_hi.get(), MPFR_RNDU);
  return out;
}

double Log2Value::approx() const {
  const auto enc = enclose(64);
  return mpfr_get_d(enc.lo.get(), MPFR_RNDN) / 2 + mpfr_get_d(enc.hi.get(), MPFR_RNDN) / 2;
}

std::partial_ordering Log2Value::compare(const Log2Value& other) const {
  const Log2Value diff = *this - other;
  if (diff.is_rational()) {
    const int s = cmp(diff.offset(), 0);
    return s < 0 ? std::partial_ordering::less
                 : (s > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  // The argument is a reduced odd/odd fraction other than 1, so log2 of it is
  // irrational and the difference cannot vanish; refine until the sign shows.
  for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
    const auto enc = diff.enclose(prec);
    if (mpfr_sgn(enc.lo.get()) > 0) return std::partial_ordering::greater;
    if (mpfr_sgn(enc.hi.get()) < 0) return std::partial_ordering::less;
  }
  throw Error(ErrorKind::PrecisionBudgetExceeded, "log2 comparison did not separate");
}

std::string Log2Value::to_string() const {
  if (argument_ == 1) return to_fraction_string(offset_);
  return to_fraction_string(offset_) + " + log2(" + to_fraction_string(argument_) + ")";
}

Rational Quotient::exact() const {
  if (!numerator.is_rational()) throw Error(ErrorKind::OutOfRange, "quotient has an irrational numerator");
  return numerator.offset() / denominator;
}

std::pair<double, double> Quotient::bounds() const {
  constexpr mpfr_prec_t prec = 128;
  const auto num = numerator.enclose(prec);
  BigFloat den_lo(prec), den_hi(prec), lo(prec), hi(prec);
  mpfr_set_q(den_lo.get(), denominator.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(den_hi.get(), denominator.get_mpq_t(), MPFR_RNDU);
  if (mpfr_sgn(num.lo.get()) >= 0) {
    mpfr_div(lo.get(), num.lo.get(), den_hi.get(), MPFR_RNDD);
  } else {
    mpfr_div(lo.get(), num.lo.get(), den_lo.get(), MPFR_RNDD);
  }
  if (mpfr_sgn(num.hi.get()) >= 0) {
    mpfr_div(hi.get(), num.hi.get(), den_lo.get(), MPFR_RNDU);
  } else {
    mpfr_div(hi.get(), num.hi.get(), den_hi.get(), MPFR_RNDU);
  }
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

double Quotient::approx() const {
  const auto [lo, hi] = bounds();
  return lo / 2 + hi / 2;
}

}  // namespace dimlab
