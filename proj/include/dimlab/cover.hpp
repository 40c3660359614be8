#pragma once

// Covering numbers N_delta on the line: exact greedy counts over enumerated
// geometry and the proofs' combinatorial bounds at deep scales. A scale is
// given by its exponent e, meaning delta = 2^{-e}.

#include "dimlab/construct.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dimlab {

enum class CountMode { Exact, Bounds };
std::string_view to_string(CountMode mode);

struct CountResult {
  CountMode mode = CountMode::Exact;
  Integer exact = 0;  // Exact mode only
  Log2Value log2_lower;
  Log2Value log2_upper;
  std::string regime;

  static CountResult exact_count(const Integer& n, std::string regime);
  static CountResult bounds(Log2Value lower, Log2Value upper, std::string regime);
};

/// Indices of the scale 2^{-e} relative to l_m = 2^{-L(m)}:
///   n(r):  l_{n} <= r < l_{n-1}
///   m(R):  l_{m+1}/2 <= R < l_m/2, clamped to 0 when R >= l_0/2
///   k(d):  l_{k+1} <= d < l_k
struct ScaleIndices {
  std::uint64_t n_of_r = 0;
  std::uint64_t m_of_R = 0;
  std::uint64_t k_of_delta = 0;
  bool m_clamped = false;
};

/// Throws ScaleOutOfRange unless 0 < 2^{-e} < 1.
ScaleIndices scale_indices(const Rational& e, const CParams& p);

/// Closed component [lo, hi] with certified double bounds on both ends.
struct Segment {
  Segment(RadicalNumber lo, RadicalNumber hi, std::optional<Rational> log_length = std::nullopt);

  RadicalNumber lo;
  RadicalNumber hi;
  std::optional<Rational> log_length;  // hi - lo = 2^{-log_length}, when known
  double lo_bounds[2];
  double hi_bounds[2];
};

/// Closed components of the geometry (points become degenerate segments),
/// sorted by left end. X contributes the components of all its parts.
std::vector<Segment> to_segments(const SetApprox& geometry);

/// Minimal number of closed length-2^{-e} intervals covering the segments,
/// which must be sorted by left end. Left-to-right greedy, exact.
Integer greedy_cover_count(const std::vector<Segment>& segments, const Rational& e);
CountResult greedy_cover_count(const SetApprox& geometry, const Rational& e);

/// Greedy count at scale 2^{-er} of the geometry clipped to [x - R, x + R],
/// R = 2^{-eR}. Throws InsufficientDepth if any component is longer than r.
CountResult ball_restricted_count(const std::vector<Segment>& segments, const RadicalNumber& x,
                                  const Rational& eR, const Rational& er);

/// log2 N_delta(C) in [m - log2 6, m] with m = min{m : l_m <= delta}.
CountResult cylinder_count_C(const CParams& p, const Rational& e);
/// log2 N_delta(D) >= k(delta) - n(delta), n(delta) the largest n with k_n < k(delta).
CountResult count_D_lower(const CParams& p, const SequenceSpec& kseq, const Rational& e);
/// log2 N_delta(E) <= log2 n(delta) + j_{n(delta)} - n(delta).
CountResult count_E_upper(const Rational& gamma, const SequenceSpec& jseq, const Rational& e);

}  // namespace dimlab
