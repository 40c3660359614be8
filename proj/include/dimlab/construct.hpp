#pragma once

// Finite-depth approximations of the four families C, D, E, F and their
// union X. Lengths are exact powers 2^{-e}; positions are exact elements of
// Q(2^{1/Q}).

#include "dimlab/params.hpp"
#include "dimlab/radical.hpp"
#include "dimlab/words.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dimlab {

inline constexpr int kIntervalDepthCap = 20;

enum class Family { C, D, E, F, X };
std::string_view to_string(Family family);
Family parse_family(std::string_view name);

/// How the identity letter acts in P_w.
///  Skeleton: P_w is the endpoint pair of I_{strip(w)}; every D_n point is
///            then an endpoint of a C_m cylinder for all m >= n.
///  LevelIdentity: S_{i,*} is the identity at level i and later letters keep
///            their own level's ratio.
enum class StarSemantics { Skeleton, LevelIdentity };
std::string_view to_string(StarSemantics semantics);
StarSemantics parse_star_semantics(std::string_view name);

struct CParams {
  Rational beta;
  Rational gamma;
  SequenceSpec nseq = SequenceSpec::defaults(SequenceRole::n);
};

struct FParams {
  Rational gamma;
  SequenceSpec aseq = SequenceSpec::defaults(SequenceRole::a);
  SequenceSpec bseq = SequenceSpec::defaults(SequenceRole::b);
};

struct Interval {
  Word word;
  Rational log_length;  // length = 2^{-log_length}
  RadicalNumber left;

  RadicalNumber length() const { return RadicalNumber::pow2(log_length); }
  RadicalNumber right() const { return left + length(); }
};

struct PointAtom {
  Word word;         // binary skeleton (Skeleton) or ternary word (LevelIdentity)
  int endpoint = 0;  // 0: image of 0, 1: image of 1
  int level = 0;     // minimal level producing the point
  RadicalNumber coordinate;
};

struct SetApprox {
  Family family = Family::C;
  int depth = 0;
  bool implicit = false;  // descriptor only, no geometry
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Interval> intervals;
  std::vector<PointAtom> points;
  std::vector<SetApprox> parts;  // X only: C, D, E, F in that order

  std::size_t cardinality() const;
};

/// Level structure of C(beta, gamma, n): per-level contraction exponents and
/// their cumulative sums L(m) = -log2 l_m.
class CModel {
 public:
  explicit CModel(CParams params);

  const CParams& params() const { return params_; }
  const Sequence& nseq() const { return nseq_; }

  /// e with c_level = 2^{-e}: 1/beta on [n_{2k}, n_{2k+1}), else 1/gamma.
  /// Levels below n_0 use 1/gamma.
  Rational exponent(std::uint64_t level) const;
  /// L(m) = sum_{i <= m} exponent(i), in closed form over the blocks of n.
  Rational cumulative(std::uint64_t level) const;
  /// Smallest m with L(m) >= e.
  std::uint64_t first_level_reaching(const Rational& e) const;

  RadicalNumber length(std::uint64_t level) const { return RadicalNumber::pow2(cumulative(level)); }
  /// Left endpoint of I_w: sum over w_i = 1 of (l_{i-1} - l_i).
  RadicalNumber left(std::string_view w) const;
  Interval cylinder(std::string_view w) const;

 private:
  CParams params_;
  Sequence nseq_;
};

/// Interval tree of F(gamma, a, b). Exponents x are in units of log2(alpha),
/// i.e. |V_w| = alpha^{-x} = 2^{-x/gamma}.
class FModel {
 public:
  explicit FModel(FParams params);

  const FParams& params() const { return params_; }
  const Sequence& aseq() const { return aseq_; }
  const Sequence& bseq() const { return bseq_; }

  /// The heap index f(w_1..w_m) of the unique prefix with |w| = a_{f(prefix)},
  /// if any. Throws AmbiguousLengthRule when two prefixes match.
  std::optional<TreeIndex> reset_prefix(std::string_view w) const;
  /// x(w) by walking the construction rule level by level.
  Integer exponent_units(std::string_view w) const;
  /// x at depth D along u followed by zeros, without materializing the path.
  Integer path_exponent_units(std::string_view u, const Integer& depth) const;

  /// l_k = a_k - 1 - a_{p(k)} + b_{p(k)}.
  Integer component_units(TreeIndex k) const;

  Rational units_to_exponent(const Integer& x) const { return Rational(x) / params_.gamma; }

 private:
  FParams params_;
  Sequence aseq_;
  Sequence bseq_;
};

/// Operation-level entry points.
Rational contraction_ratio(std::uint64_t level, const CParams& p);
Interval cylinder_interval(std::string_view w, const CParams& p);
Rational component_length_exponent_F(TreeIndex k, const FParams& p);

SetApprox build_C(const CParams& p, int depth, bool enumerate = true);
SetApprox build_D(const CParams& p, const SequenceSpec& kseq, int max_level,
                  StarSemantics semantics = StarSemantics::Skeleton);
SetApprox build_E(const Rational& gamma, const SequenceSpec& jseq, int max_level,
                  StarSemantics semantics = StarSemantics::Skeleton);
SetApprox build_F(const FParams& p, int depth);

struct Depths {
  int c = 10;
  int d = 10;
  int e = 10;
  int f = 10;
};

SetApprox build_X(const DimTuple& dims, const SequenceSet& seqs, const Depths& depths,
                  StarSemantics semantics = StarSemantics::Skeleton);

/// Permutation sorting `values` ascending (stable), deciding by cached
/// enclosures first and exact arithmetic only when those overlap.
std::vector<std::size_t> exact_order(const std::vector<RadicalNumber>& values);

/// Common field order for every value produced from these exponents.
std::uint64_t field_order(std::initializer_list<Rational> exponents);

}  // namespace dimlab
