#pragma once

// The natural measure mu on C and on F: every level-n cylinder carries mass
// 2^{-n}. Ball masses are enclosed between the cylinders certifiably inside
// the ball and those meeting it, at a chosen depth.

#include "dimlab/construct.hpp"

#include <utility>

namespace dimlab {

enum class Carrier { C, F };

struct MeasureModel {
  Carrier carrier = Carrier::C;
  CParams c{Rational(1, 2), Rational(1, 2)};
  FParams f{Rational(1, 2)};

  static MeasureModel on_C(CParams p) { return MeasureModel{Carrier::C, std::move(p), FParams{Rational(1, 2)}}; }
  static MeasureModel on_F(FParams p) {
    return MeasureModel{Carrier::F, CParams{Rational(1, 2), Rational(1, 2)}, std::move(p)};
  }
};

struct MassBound {
  Rational lower;
  Rational upper;
};

Rational cylinder_mass(std::string_view w, const MeasureModel& m);

/// Enclosure of mu(B(x, r)), r = 2^{-er}, from the depth-level cylinders.
/// Throws InsufficientDepth unless level-depth cylinders are no longer than r/4.
MassBound ball_mass(const RadicalNumber& x, const Rational& er, const MeasureModel& m, int depth);

/// Number of level-`level` cylinders meeting the closed ball B(x, r).
Integer cylinders_meeting_ball(const RadicalNumber& x, const Rational& er, const MeasureModel& m, int level);

/// Certified bounds on mu(B(x, r)) / r^exponent.
std::pair<double, double> mdp_ratio(const RadicalNumber& x, const Rational& er, const Rational& exponent,
                                    const MeasureModel& m, int depth);

/// Bounds on log2 mu(B(x, l_n)) for x in C, valid at any level n: the ball
/// holds the level-n cylinder of x and meets at most three of level n - 1.
std::pair<Log2Value, Log2Value> designed_log_mass_C(std::uint64_t n);

}  // namespace dimlab
