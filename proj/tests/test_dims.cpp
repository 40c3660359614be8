#include "dimlab/dims.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dimlab;

namespace {

CParams cparams(const char* beta, const char* gamma) { return CParams{parse_rational(beta), parse_rational(gamma)}; }

DimTuple tuple(std::array<const char*, 6> v) {
  std::array<Rational, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = parse_rational(v[i]);
  return validate_dim_tuple(out);
}

const DimTuple& default_dims() {
  static const DimTuple d = tuple({"0.3", "0.4", "0.5", "0.6", "0.7", "0.8"});
  return d;
}

std::vector<Rational> integer_grid(int lo, int hi) {
  std::vector<Rational> out;
  for (int e = lo; e <= hi; ++e) out.emplace_back(e);
  return out;
}

}  // namespace

TEST(BoxProfile, MiddleHalvesEvenScales) {
  const Profile p = box_profile(build_C(cparams("1/2", "1/2"), 10), integer_grid(2, 20));
  ASSERT_EQ(p.samples.size(), 19u);
  for (const auto& s : p.samples) {
    const double e = s.scale.get_d();
    const double est = s.range().first;
    if (s.scale.get_num() % 2 == 0) {
      EXPECT_LE(est, 0.5 + 1e-12);
      EXPECT_GE(est, 0.5 - std::log2(6.0) / e);
    }
    EXPECT_EQ(s.regime, "greedy");
  }
  EXPECT_NEAR(p.samples.back().range().first, 0.5, 0.02);
}

TEST(BoxProfile, MiddleHalvesOddScalesExceedOneHalf) {
  // at delta = 1/8 the four level-2 cylinders of length 1/16 are 1/8 apart
  const Profile p = box_profile(build_C(cparams("1/2", "1/2"), 10), {Rational(3)});
  EXPECT_EQ(*p.samples[0].exact, 4);
  EXPECT_EQ(p.samples[0].lower().exact(), Rational(2, 3));
}

TEST(BoxProfile, TrivialSets) {
  const Profile unit = box_profile(build_C(cparams("1/2", "1/2"), 0), integer_grid(1, 8));
  for (const auto& s : unit.samples) {
    EXPECT_EQ(s.lower().exact(), 1);
    EXPECT_EQ(s.regime, "greedy-unresolved");
  }
  SetApprox point;
  point.family = Family::D;
  point.points.push_back(PointAtom{"", 0, 0, RadicalNumber(0)});
  for (const auto& s : box_profile(point, integer_grid(1, 8)).samples) EXPECT_EQ(s.lower().exact(), 0);
}

TEST(BoxProfile, RegimesAgree) {
  const CParams p = cparams("0.3", "0.5");
  const auto grid = integer_grid(1, 30);
  const Profile exact = box_profile(build_C(p, 12), grid);
  const Profile bounds = box_profile(p, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (exact.samples[i].regime != "greedy") continue;
    const auto [lo, hi] = bounds.samples[i].range();
    const double v = exact.samples[i].range().first;
    EXPECT_LE(lo, v + 1e-12);
    EXPECT_GE(hi, v - 1e-12);
  }
}

TEST(Designed, CLowerMatchesDisplayedQuotient) {
  const Profile p = designed_scale_profile(Design::CLower, default_dims(), SequenceSet{}, {1, 2});
  EXPECT_EQ(p.samples[0].upper().exact(), Rational(3, 10) * 512 / 496);
  const Rational n4(65536), n5(Integer(1) << 25);
  EXPECT_EQ(p.samples[1].upper().exact(), Rational(3, 10) * n5 / (n5 - n4));
  EXPECT_NEAR(p.samples[1].range().second, 0.3, 0.001);
}

TEST(Designed, XLowerBelowDisplayedBound) {
  const Profile p = designed_scale_profile(Design::XLower, default_dims(), SequenceSet{}, {1, 2});
  const Rational n4(65536), n5(Integer(1) << 25);
  const Rational display = Rational(3, 5) * (n5 + 2) / (n5 - n4);
  EXPECT_LE(p.samples[1].range().second, display.get_d());
  // the displayed bound itself is 1.17e-3 above u
  EXPECT_GT(display - Rational(3, 5), Rational(1, 1000));
  EXPECT_NEAR(p.samples[1].range().second, 0.6, 0.001);
}

TEST(Designed, DUpperIndexArithmetic) {
  const Profile p = designed_scale_profile(Design::DUpper, default_dims(), SequenceSet{}, {1, 2});
  // k = 1: n_2 = 16, m(1) = 4, l_15 = 2^{-(1/0.6 + 14/0.7)}
  const Rational e1 = Rational(5, 3) + 20;
  EXPECT_EQ(p.samples[0].scale, e1);
  EXPECT_EQ(p.samples[0].lower().exact(), Rational(12) / e1);
  EXPECT_NEAR(p.samples[1].range().first, 0.7, 0.01);
}

TEST(Designed, CUpperAndDLower) {
  const Profile c = designed_scale_profile(Design::CUpper, default_dims(), SequenceSet{}, {2, 2});
  EXPECT_NEAR(c.samples[0].range().second, 0.5, 0.01);
  const Profile d = designed_scale_profile(Design::DLower, default_dims(), SequenceSet{}, {2, 2});
  EXPECT_NEAR(d.samples[0].range().first, 0.6, 0.001);
}

TEST(Assouad, MiddleHalvesPair) {
  const SetApprox c = build_C(cparams("1/2", "1/2"), 5);
  std::vector<RadicalNumber> centers;
  for (const auto& iv : c.intervals) centers.push_back(iv.left);
  const Profile p = assouad_profile(c, centers, {{Rational(2), Rational(10)}});
  EXPECT_LE(p.samples[0].range().second, 0.5 + 3.0 / 8);
}

TEST(Assouad, DesignedEPair) {
  const Profile p = designed_assouad_E(Rational(4, 5), SequenceSpec::defaults(SequenceRole::j), {8});
  ASSERT_EQ(p.samples.size(), 1u);
  EXPECT_EQ(p.samples[0].lower().exact(), Rational(2, 5));
}

TEST(Assouad, SinglePointIsZero) {
  SetApprox point;
  point.family = Family::D;
  point.points.push_back(PointAtom{"", 0, 0, RadicalNumber(1)});
  const Profile p = assouad_profile(point, {RadicalNumber(1)}, {{Rational(2), Rational(6)}, {Rational(3), Rational(9)}});
  for (const auto& s : p.samples) EXPECT_EQ(s.lower().exact(), 0);
}

TEST(Assouad, DominatesUpperBox) {
  const SetApprox c = build_C(cparams("0.3", "0.5"), 12);
  const auto grid = integer_grid(2, 20);
  std::vector<std::pair<Rational, Rational>> pairs;
  for (const auto& e : grid) pairs.emplace_back(Rational(0), e);
  const Profile a = assouad_profile(c, {RadicalNumber(0)}, pairs);
  const Profile b = box_profile(c, grid);
  EXPECT_GE(a.summary().max.first, b.summary().max.first);
}

TEST(RestrictedBox, EpsilonIsWholeSet) {
  const SetApprox f = build_F(FParams{Rational(2, 5)}, 10);
  const auto grid = integer_grid(1, 20);
  const Profile all = box_profile(f, grid);
  const Profile eps = cylinder_restricted_box(f, "", grid);
  ASSERT_EQ(all.samples.size(), eps.samples.size());
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(*all.samples[i].exact, *eps.samples[i].exact);
}

TEST(RestrictedBox, DesignedScaleMatchesEnumeration) {
  const FParams p{Rational(1, 2)};
  const ProfileSample s = designed_restricted_box_F(p, "0");
  EXPECT_EQ(s.scale, 34);  // 17 units at depth a_2 - 1 = 15
  ASSERT_TRUE(s.exact);
  EXPECT_EQ(*s.exact, Integer(1) << 14);
  const Profile enumerated = cylinder_restricted_box(build_F(p, 15), "0", {Rational(34)});
  EXPECT_EQ(*enumerated.samples[0].exact, *s.exact);
}

TEST(RestrictedBox, MinimaNearS) {
  const FParams p{Rational(2, 5)};
  double lowest = 1, highest = 0;
  for (TreeIndex k = 1; k < 32; ++k) {
    const double v = designed_restricted_box_F(p, heap_word(k)).range().first;
    lowest = std::min(lowest, v);
    highest = std::max(highest, v);
  }
  EXPECT_NEAR(lowest, 0.4, 0.1);
  EXPECT_NEAR(lowest, 14.0 / 17 * 0.4, 1e-12);
  EXPECT_LE(highest, 0.4 + 1e-12);
}

TEST(RestrictedBox, GapRuleBelowThree) {
  // alpha = 2^{1/0.9} < 3: a delta-interval can meet two cylinders
  const ProfileSample s = designed_restricted_box_F(FParams{Rational(9, 10)}, "0");
  EXPECT_FALSE(s.exact);
  EXPECT_EQ(s.regime, "designed-bounds");
}

TEST(LocalDim, GenericCenterOnC) {
  const CParams p = cparams("0.3", "0.5");
  const SetApprox c = build_C(p, 6);
  std::vector<RadicalNumber> centers;
  for (std::size_t i = 0; i < c.intervals.size(); i += 7) centers.push_back(c.intervals[i].left);
  const Profile prof = local_dim_profile(MeasureModel::on_C(p), centers, integer_grid(1, 30));
  for (const auto& s : prof.samples) {
    EXPECT_GE(s.range().first, 0.3 - std::log2(6.0) / s.scale.get_d() - 1e-12) << s.label;
  }
}

TEST(LocalDim, DesignedRadii) {
  const Profile c = designed_local_C(cparams("0.3", "0.5"), {1, 2});
  EXPECT_NEAR(c.samples[1].range().first, 0.3, 0.001);
  EXPECT_NEAR(c.samples[1].range().second, 0.3, 0.001);
  const FParams fp{Rational(1, 2)};
  const Profile f = designed_local_F(fp, {1, 2});
  const double stated = (16 + std::log2(3.0)) / 96;
  EXPECT_LE(f.samples[0].range().first, stated + 1e-12);
  EXPECT_EQ(f.samples[0].regime, "mass-enclosure");
  EXPECT_EQ(f.samples[1].regime, "designed-bounds");
}

TEST(Theorem, DefaultTuplePasses) {
  const TheoremReport r = verify_theorem(default_dims(), SequenceSet{}, Budgets{});
  ASSERT_EQ(r.checks.size(), 6u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name;
  EXPECT_TRUE(r.all_pass());
}

TEST(Theorem, AllEqualPasses) {
  const TheoremReport r = verify_theorem(tuple({"1/2", "1/2", "1/2", "1/2", "1/2", "1/2"}), SequenceSet{}, Budgets{});
  EXPECT_TRUE(r.all_pass());
}

TEST(Theorem, NegativeControlFailsLowerBox) {
  Budgets b;
  DimTuple targets = default_dims();
  targets.u = Rational(13, 20);
  b.targets = targets;
  const TheoremReport r = verify_theorem(default_dims(), SequenceSet{}, b);
  EXPECT_FALSE(r.all_pass());
  for (const auto& c : r.checks) EXPECT_EQ(c.pass, c.name != "lower-box") << c.name;
}
