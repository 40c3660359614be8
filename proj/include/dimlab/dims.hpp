#pragma once

// Dimension estimators. Every estimate is a quotient log2(count) / e where
// the scale is 2^{-e}; bounds-mode counts give an interval of quotients.

#include "dimlab/cover.hpp"
#include "dimlab/measure.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dimlab {

struct ProfileSample {
  std::string label;       // scale exponent "p/q", a pair "eR:er", or a designed index
  Rational scale;          // e, or the exponent gap er - eR for pairs
  Log2Value num_lower;     // estimate lies in [num_lower, num_upper] / denominator
  Log2Value num_upper;
  Rational denominator;
  std::optional<Integer> exact;  // exact count when one was computed
  std::string regime;

  Quotient lower() const { return Quotient{num_lower, denominator}; }
  Quotient upper() const { return Quotient{num_upper, denominator}; }
  /// Certified double bounds on the estimate interval.
  std::pair<double, double> range() const;
};

struct Profile {
  std::string design;  // which scale sequence produced the samples
  std::vector<ProfileSample> samples;

  struct Summary {
    std::pair<double, double> min{0, 0};
    std::pair<double, double> max{0, 0};
    std::pair<double, double> last{0, 0};
  };
  /// min/max/last of the per-sample ranges, taken endpoint-wise.
  Summary summary() const;
};

/// log2 N / e over a scale grid from exact greedy counts of the geometry.
/// Scales finer than the longest component are tagged "greedy-unresolved".
Profile box_profile(const SetApprox& target, const std::vector<Rational>& grid);
/// The implicit descriptor of C: cylinder-count bounds at any depth.
Profile box_profile(const CParams& p, const std::vector<Rational>& grid);

enum class Design { CLower, CUpper, DLower, DUpper, XLower };
std::string_view to_string(Design design);
Design parse_design(std::string_view name);

/// Quotients along the designed scale sequences, for k in [k_first, k_last]:
///  CLower: delta_k = 2^{-(n_{2k+1} - n_{2k})/r} on C(r, t)
///  CUpper: delta_k = l_{n_{2k}} on C(r, t)
///  DLower: delta_k = 2^{-(n_{2k+1} - n_{2k})/u} on D(u, v)
///  DUpper: delta_k = l_{n_{2k} - 1} on D(u, v)
///  XLower: the DLower scales, with the union's count bounded part by part
Profile designed_scale_profile(Design design, const DimTuple& dims, const SequenceSet& seqs,
                               std::pair<int, int> k_range);

/// log2 of an upper bound on N_delta(X), summing the four parts' bounds.
Log2Value union_log2_upper(const DimTuple& dims, const SequenceSet& seqs, const Rational& e);

/// Per pair (eR, er), max over centers of log2 N_r(B(x, R)) / (er - eR).
Profile assouad_profile(const SetApprox& target, const std::vector<RadicalNumber>& centers,
                        const std::vector<std::pair<Rational, Rational>>& pairs);

/// Pairs (R, r) = (l_n, l_{j_n}) on E(gamma): at least 2^{j_n - n - 1}
/// r-intervals are needed inside B(0, R), and at most 8 (R/r)^gamma.
Profile designed_assouad_E(const Rational& gamma, const SequenceSpec& jseq, const std::vector<std::uint64_t>& ns);

/// box_profile of the F geometry clipped to V_w.
Profile cylinder_restricted_box(const SetApprox& f_approx, const Word& w, const std::vector<Rational>& grid);

/// The designed scale inside V_w: at depth a_{f(w)} - 1 all 2^{depth - |w|}
/// cylinders below w share one length; the count is exact when alpha > 3.
ProfileSample designed_restricted_box_F(const FParams& p, const Word& w);

/// log mu(B(x, r)) / log r from the certified upper mass, per center and radius.
Profile local_dim_profile(const MeasureModel& m, const std::vector<RadicalNumber>& centers,
                          const std::vector<Rational>& radius_grid);

/// x in C at radii l_{n_{2k+1}}, from the mass bounds valid at any depth.
Profile designed_local_C(const CParams& p, std::pair<int, int> k_range);

/// x = 0 in F at radii alpha^{-b_m}, m = f(0^i) = 2^i.
Profile designed_local_F(const FParams& p, const std::vector<int>& prefix_lengths);

struct Tolerances {
  Rational hausdorff{1, 1000};
  Rational modified_box{1, 10};
  Rational packing{1, 100};
  Rational lower_box{1, 1000};
  Rational upper_box{1, 100};
  Rational assouad{1, 10};
};

struct Budgets {
  std::pair<int, int> k_range{1, 2};
  Tolerances tolerances;
  std::optional<DimTuple> targets;  // defaults to the dims themselves
  int f_word_length = 4;
  std::vector<std::uint64_t> assouad_ns{3, 10, 100, 1000, 1000000};
};

struct CheckResult {
  std::string name;
  Rational target;
  Rational tolerance;
  double measured_lower = 0;
  double measured_upper = 0;
  std::string method;
  std::string regime;
  bool pass = false;
  Profile profile;
};

struct TheoremReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

TheoremReport verify_theorem(const DimTuple& dims, const SequenceSet& seqs, const Budgets& budgets);

}  // namespace dimlab
