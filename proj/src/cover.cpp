#include "dimlab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace dimlab {

Segment::Segment(RadicalNumber lo_, RadicalNumber hi_, std::optional<Rational> log_length_)
    : lo(std::move(lo_)), hi(std::move(hi_)), log_length(std::move(log_length_)) {
  std::tie(lo_bounds[0], lo_bounds[1]) = lo.enclose(64).to_doubles();
  std::tie(hi_bounds[0], hi_bounds[1]) = hi.enclose(64).to_doubles();
}

std::string_view to_string(CountMode mode) { return mode == CountMode::Exact ? "exact" : "bounds"; }

CountResult CountResult::exact_count(const Integer& n, std::string regime) {
  CountResult out;
  out.mode = CountMode::Exact;
  out.exact = n;
  out.log2_lower = out.log2_upper = Log2Value::of_integer(n);
  out.regime = std::move(regime);
  return out;
}

CountResult CountResult::bounds(Log2Value lower, Log2Value upper, std::string regime) {
  if (lower.compare(upper) == std::partial_ordering::greater) {
    throw Error(ErrorKind::OutOfRange, "count bounds out of order: " + lower.to_string() + " > " + upper.to_string());
  }
  CountResult out;
  out.mode = CountMode::Bounds;
  out.log2_lower = std::move(lower);
  out.log2_upper = std::move(upper);
  out.regime = std::move(regime);
  return out;
}

ScaleIndices scale_indices(const Rational& e, const CParams& p) {
  if (e <= 0) throw Error(ErrorKind::ScaleOutOfRange, "scale 2^-(" + to_fraction_string(e) + ") is not below 1");
  const CModel model(p);
  ScaleIndices out;
  out.n_of_r = model.first_level_reaching(e);
  out.k_of_delta = out.n_of_r - 1;
  const std::uint64_t m_plus_one = model.first_level_reaching(e - 1);
  out.m_clamped = m_plus_one == 0;
  out.m_of_R = out.m_clamped ? 0 : m_plus_one - 1;
  return out;
}

namespace {

void append_segments(const SetApprox& geometry, std::vector<Segment>& out) {
  if (geometry.implicit) throw Error(ErrorKind::InsufficientDepth, "geometry is an implicit descriptor");
  for (const auto& iv : geometry.intervals) out.push_back(Segment{iv.left, iv.right(), iv.log_length});
  for (const auto& pt : geometry.points) out.push_back(Segment{pt.coordinate, pt.coordinate, std::nullopt});
  for (const auto& part : geometry.parts) append_segments(part, out);
}

}  // namespace

std::vector<Segment> to_segments(const SetApprox& geometry) {
  std::vector<Segment> raw;
  append_segments(geometry, raw);
  std::vector<RadicalNumber> lefts;
  lefts.reserve(raw.size());
  for (const auto& s : raw) lefts.push_back(s.lo);
  std::vector<Segment> out;
  out.reserve(raw.size());
  for (std::size_t i : exact_order(lefts)) out.push_back(std::move(raw[i]));
  return out;
}

namespace {

// A value with certified double bounds; comparisons fall back to exact
// arithmetic only when two enclosures overlap.
struct Bounded {
  const RadicalNumber* value;
  double lo;
  double hi;
};

Bounded lo_of(const Segment& s) { return {&s.lo, s.lo_bounds[0], s.lo_bounds[1]}; }
Bounded hi_of(const Segment& s) { return {&s.hi, s.hi_bounds[0], s.hi_bounds[1]}; }

bool less_equal(const Bounded& a, const Bounded& b) {
  if (a.hi <= b.lo) return true;
  if (a.lo > b.hi) return false;
  return *a.value <= *b.value;
}

Integer ceil_quotient(const Bounded& hi, const Bounded& anchor, const Rational& e, double inv_delta) {
  double qlo = (hi.lo - anchor.hi) * inv_delta;
  double qhi = (hi.hi - anchor.lo) * inv_delta;
  if (std::isfinite(qlo) && std::isfinite(qhi) && std::abs(qhi) < 1e15) {
    qlo -= std::abs(qlo) * 1e-15 + 1e-300;
    qhi += std::abs(qhi) * 1e-15 + 1e-300;
    const double c = std::ceil(qlo);
    if (c == std::ceil(qhi)) return Integer(c);
  }
  return (*hi.value - *anchor.value).scaled(-e).ceil();
}

}  // namespace

Integer greedy_cover_count(const std::vector<Segment>& segments, const Rational& e) {
  const RadicalNumber delta = RadicalNumber::pow2(e);
  const double inv_delta = std::exp2(e.get_d());
  const std::size_t n = segments.size();
  Integer count = 0;
  std::size_t i = 0;
  while (i < n) {
    RadicalNumber anchor_value = segments[i].lo;
    Bounded anchor = lo_of(segments[i]);
    for (;;) {
      // intervals needed to reach segments[i].hi from the anchor
      const Integer k = std::max(Integer(1), ceil_quotient(hi_of(segments[i]), anchor, e, inv_delta));
      count += k;
      RadicalNumber end_value = anchor_value + delta * RadicalNumber(k);
      const auto [end_lo, end_hi] = end_value.enclose(64).to_doubles();
      const Bounded end{&end_value, end_lo, end_hi};
      ++i;
      while (i < n && less_equal(hi_of(segments[i]), end)) ++i;
      if (i < n && less_equal(lo_of(segments[i]), end)) {
        anchor_value = std::move(end_value);
        const auto [lo, hi] = anchor_value.enclose(64).to_doubles();
        anchor = Bounded{&anchor_value, lo, hi};
        continue;
      }
      break;
    }
  }
  return count;
}

CountResult greedy_cover_count(const SetApprox& geometry, const Rational& e) {
  return CountResult::exact_count(greedy_cover_count(to_segments(geometry), e), "greedy");
}

CountResult ball_restricted_count(const std::vector<Segment>& segments, const RadicalNumber& x, const Rational& eR,
                                  const Rational& er) {
  if (er <= eR) throw Error(ErrorKind::ScaleOutOfRange, "ball counts need r < R");
  const RadicalNumber r = RadicalNumber::pow2(er);
  for (const auto& s : segments) {
    const bool too_long = s.log_length ? *s.log_length < er : s.hi - s.lo > r;
    if (too_long) {
      throw Error(ErrorKind::InsufficientDepth, "a component is longer than r = 2^-(" + to_fraction_string(er) + ")");
    }
  }
  const Segment ball(x - RadicalNumber::pow2(eR), x + RadicalNumber::pow2(eR));
  const Bounded lo = lo_of(ball);
  const Bounded hi = hi_of(ball);
  // components are no longer than r, so none meeting the ball starts before lo - r
  const Segment start(ball.lo - r, ball.lo - r);
  auto it = std::partition_point(segments.begin(), segments.end(),
                                 [&](const Segment& s) { return !less_equal(lo_of(start), lo_of(s)); });
  std::vector<Segment> clipped;
  for (; it != segments.end() && less_equal(lo_of(*it), hi); ++it) {
    if (!less_equal(lo, hi_of(*it))) continue;
    const bool left_in = less_equal(lo, lo_of(*it));
    const bool right_in = less_equal(hi_of(*it), hi);
    if (left_in && right_in) {
      clipped.push_back(*it);
    } else {
      clipped.emplace_back(left_in ? it->lo : ball.lo, right_in ? it->hi : ball.hi);
    }
  }
  return CountResult::exact_count(greedy_cover_count(clipped, er), "greedy-ball");
}

CountResult cylinder_count_C(const CParams& p, const Rational& e) {
  if (e <= 0) return CountResult::bounds(Log2Value(0), Log2Value(0), "cylinder-bounds");
  const Rational m(Integer(std::to_string(CModel(p).first_level_reaching(e)), 10));
  const Log2Value upper(m);
  Log2Value lower = upper - Log2Value(0, 6);
  if (lower.compare(Log2Value(0)) == std::partial_ordering::less) lower = Log2Value(0);
  return CountResult::bounds(lower, upper, "cylinder-bounds");
}

CountResult count_D_lower(const CParams& p, const SequenceSpec& kseq, const Rational& e) {
  if (e <= 0) return CountResult::bounds(Log2Value(0), Log2Value(0), "D-index-bounds");
  const ScaleIndices idx = scale_indices(e, p);
  const Integer k(std::to_string(idx.k_of_delta), 10);
  const auto below = Sequence(kseq).last_index_below(k);
  const Integer n(std::to_string(below.value_or(0)), 10);
  const CountResult c = cylinder_count_C(p, e);
  return CountResult::bounds(Log2Value(Rational(k - n)), c.log2_upper, "D-index-bounds");
}

CountResult count_E_upper(const Rational& gamma, const SequenceSpec& jseq, const Rational& e) {
  if (e <= 0) return CountResult::exact_count(Integer(1), "E-index-bounds");
  const std::uint64_t n = scale_indices(e, CParams{gamma, gamma}).n_of_r;
  const Integer nz(std::to_string(n), 10);
  const Integer j = Sequence(jseq).term(n);
  return CountResult::bounds(Log2Value(0), Log2Value(Rational(j - nz), Rational(nz)), "E-index-bounds");
}

}  // namespace dimlab
