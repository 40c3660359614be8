#include "dimlab/measure.hpp"

#include <functional>
#include <optional>

namespace dimlab {

Rational cylinder_mass(std::string_view w, const MeasureModel&) {
  Rational out(1);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(w.size()));
  return out;
}

namespace {

struct Node {
  Word word;
  RadicalNumber left;
  Rational exponent;  // length = 2^{-exponent}
  Integer units;      // F only
};

enum class Place { Inside, Disjoint, Partial };

class Descent {
 public:
  Descent(const MeasureModel& m) : m_(m) {
    if (m.carrier == Carrier::C) {
      c_.emplace(m.c);
    } else {
      f_.emplace(m.f);
    }
  }

  Node root() const { return Node{Word(), RadicalNumber(), Rational(0), Integer(0)}; }

  Node child(const Node& parent, char letter) const {
    Node out;
    out.word = parent.word + letter;
    if (c_) {
      out.exponent = c_->cumulative(out.word.size());
    } else {
      const auto idx = f_->reset_prefix(out.word);
      out.units = idx ? f_->bseq().term(*idx) : Integer(parent.units + 1);
      out.exponent = f_->units_to_exponent(out.units);
    }
    out.left = parent.left;
    if (letter == '1') out.left += RadicalNumber::pow2(parent.exponent) - RadicalNumber::pow2(out.exponent);
    return out;
  }

  /// Sufficient condition for every level-depth cylinder to have length <= r/4.
  bool deep_enough(int depth, const Rational& er) const {
    const Rational need = er + 2;
    if (c_) return c_->cumulative(static_cast<std::uint64_t>(depth)) >= need;
    return Rational(depth) / m_.f.gamma >= need;
  }

 private:
  const MeasureModel& m_;
  std::optional<CModel> c_;
  std::optional<FModel> f_;
};

Place place(const Node& node, const RadicalNumber& lo, const RadicalNumber& hi) {
  const RadicalNumber right = node.left + RadicalNumber::pow2(node.exponent);
  if (right < lo || node.left > hi) return Place::Disjoint;
  if (lo <= node.left && right <= hi) return Place::Inside;
  return Place::Partial;
}

Rational pow2_neg(std::size_t n) {
  Rational out(1);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(n));
  return out;
}

}  // namespace

MassBound ball_mass(const RadicalNumber& x, const Rational& er, const MeasureModel& m, int depth) {
  if (depth < 0) throw Error(ErrorKind::OutOfRange, "negative depth");
  const Descent descent(m);
  if (!descent.deep_enough(depth, er)) {
    throw Error(ErrorKind::InsufficientDepth,
                "depth " + std::to_string(depth) + " is too shallow for r = 2^-(" + to_fraction_string(er) + ")");
  }
  const RadicalNumber r = RadicalNumber::pow2(er);
  const RadicalNumber lo = x - r;
  const RadicalNumber hi = x + r;
  MassBound out{Rational(0), Rational(0)};
  std::function<void(const Node&)> rec = [&](const Node& node) {
    switch (place(node, lo, hi)) {
      case Place::Disjoint:
        return;
      case Place::Inside:
        out.lower += pow2_neg(node.word.size());
        out.upper += pow2_neg(node.word.size());
        return;
      case Place::Partial:
        if (static_cast<int>(node.word.size()) == depth) {
          out.upper += pow2_neg(node.word.size());
          return;
        }
        rec(descent.child(node, '0'));
        rec(descent.child(node, '1'));
    }
  };
  rec(descent.root());
  return out;
}

Integer cylinders_meeting_ball(const RadicalNumber& x, const Rational& er, const MeasureModel& m, int level) {
  const Descent descent(m);
  const RadicalNumber r = RadicalNumber::pow2(er);
  const RadicalNumber lo = x - r;
  const RadicalNumber hi = x + r;
  Integer count = 0;
  std::function<void(const Node&)> rec = [&](const Node& node) {
    const Place where = place(node, lo, hi);
    if (where == Place::Disjoint) return;
    const int remaining = level - static_cast<int>(node.word.size());
    if (where == Place::Inside || remaining == 0) {
      count += Integer(1) << static_cast<mp_bitcnt_t>(remaining);
      return;
    }
    rec(descent.child(node, '0'));
    rec(descent.child(node, '1'));
  };
  rec(descent.root());
  return count;
}

std::pair<double, double> mdp_ratio(const RadicalNumber& x, const Rational& er, const Rational& exponent,
                                    const MeasureModel& m, int depth) {
  const MassBound mass = ball_mass(x, er, m, depth);
  // ratio = mu * 2^{er * exponent}
  const auto exp2_bounds = [&](const Rational& mu, mpfr_rnd_t mode) {
    if (mu == 0) return 0.0;
    const Enclosure log = Log2Value(er * exponent, mu).enclose(128);
    BigFloat v(128);
    mpfr_exp2(v.get(), mode == MPFR_RNDD ? log.lo.get() : log.hi.get(), mode);
    return mpfr_get_d(v.get(), mode);
  };
  return {exp2_bounds(mass.lower, MPFR_RNDD), exp2_bounds(mass.upper, MPFR_RNDU)};
}

std::pair<Log2Value, Log2Value> designed_log_mass_C(std::uint64_t n) {
  if (n == 0) return {Log2Value(0), Log2Value(0)};
  const Rational level(Integer(std::to_string(n), 10));
  return {Log2Value(-level), Log2Value(1 - level, 3)};
}

}  // namespace dimlab
