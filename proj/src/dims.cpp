#include "dimlab/dims.hpp"

#include <algorithm>
#include <limits>

namespace dimlab {

namespace {

Integer big(std::uint64_t v) { return Integer(std::to_string(v), 10); }

std::uint64_t small(const Integer& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) throw Error(ErrorKind::OutOfRange, std::string(what) + " does not fit a level index");
  return v.get_ui();
}

std::string label_of(const Rational& e) { return to_fraction_string(e); }

ProfileSample exact_sample(std::string label, const Rational& e, const Integer& count, std::string regime) {
  const Log2Value v = Log2Value::of_integer(count);
  return ProfileSample{std::move(label), e, v, v, e, count, std::move(regime)};
}

ProfileSample count_sample(std::string label, const Rational& e, const CountResult& c) {
  if (c.mode == CountMode::Exact) return exact_sample(std::move(label), e, c.exact, c.regime);
  return ProfileSample{std::move(label), e, c.log2_lower, c.log2_upper, e, std::nullopt, c.regime};
}

Log2Value max_of(const std::vector<Log2Value>& values) {
  Log2Value best = values.front();
  for (const auto& v : values) {
    if (v.compare(best) == std::partial_ordering::greater) best = v;
  }
  return best;
}

// log2(sum 2^{v_i}) from above. With integer offsets the sum is formed
// exactly relative to the largest offset; negligible terms are rounded up.
Log2Value log2_sum_upper(const std::vector<Log2Value>& values) {
  const bool integral = std::all_of(values.begin(), values.end(),
                                    [](const Log2Value& v) { return v.offset().get_den() == 1; });
  if (!integral) {
    return max_of(values) + Log2Value(0, Rational(static_cast<long>(values.size())));
  }
  Integer top = values.front().offset().get_num();
  for (const auto& v : values) top = std::max(top, Integer(v.offset().get_num()));
  Rational sum = 0;
  for (const auto& v : values) {
    const Integer shift = top - v.offset().get_num();
    const Integer arg_ceil = ceil_of(v.argument());
    const auto arg_bits = static_cast<long>(mpz_sizeinbase(arg_ceil.get_mpz_t(), 2));
    if (shift > 64 + arg_bits) {
      sum += Rational(1, Integer(1) << 64);
      continue;
    }
    Rational term = v.argument();
    mpq_div_2exp(term.get_mpq_t(), term.get_mpq_t(), shift.get_ui());
    sum += term;
  }
  return Log2Value(Rational(top), sum);
}

Integer n_term(const SequenceSet& seqs, std::uint64_t index) { return Sequence(seqs.n).term(index); }

void check_k_range(std::pair<int, int> k_range) {
  if (k_range.first < 0 || k_range.first > k_range.second) {
    throw Error(ErrorKind::OutOfRange, "k range must satisfy 0 <= first <= last");
  }
}

}  // namespace

std::pair<double, double> ProfileSample::range() const { return {lower().bounds().first, upper().bounds().second}; }

Profile::Summary Profile::summary() const {
  Summary out;
  if (samples.empty()) return out;
  out.min = out.max = out.last = samples.back().range();
  for (const auto& s : samples) {
    const auto r = s.range();
    out.min = {std::min(out.min.first, r.first), std::min(out.min.second, r.second)};
    out.max = {std::max(out.max.first, r.first), std::max(out.max.second, r.second)};
  }
  return out;
}

// ---------------------------------------------------------------------------
// box counting

namespace {

std::vector<Rational> sorted_positive(const std::vector<Rational>& grid) {
  std::vector<Rational> out = grid;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.front() <= 0) throw Error(ErrorKind::ScaleOutOfRange, "profile scales must be below 1");
  return out;
}

}  // namespace

Profile box_profile(const SetApprox& target, const std::vector<Rational>& grid) {
  Profile out;
  out.design = "grid";
  const auto segments = to_segments(target);
  std::optional<Rational> coarsest;  // log length of the longest interval
  for (const auto& s : segments) {
    if (s.log_length && (!coarsest || *s.log_length < *coarsest)) coarsest = s.log_length;
  }
  for (const auto& e : sorted_positive(grid)) {
    // unresolved: components longer than delta, so this counts the approximation itself
    const bool resolved = !coarsest || *coarsest >= e;
    out.samples.push_back(
        exact_sample(label_of(e), e, greedy_cover_count(segments, e), resolved ? "greedy" : "greedy-unresolved"));
  }
  return out;
}

Profile box_profile(const CParams& p, const std::vector<Rational>& grid) {
  Profile out;
  out.design = "grid";
  for (const auto& e : sorted_positive(grid)) out.samples.push_back(count_sample(label_of(e), e, cylinder_count_C(p, e)));
  return out;
}

// ---------------------------------------------------------------------------
// designed scale sequences

std::string_view to_string(Design design) {
  switch (design) {
    case Design::CLower: return "C-lower";
    case Design::CUpper: return "C-upper";
    case Design::DLower: return "D-lower";
    case Design::DUpper: return "D-upper";
    case Design::XLower: return "X-lower";
  }
  return "?";
}

Design parse_design(std::string_view name) {
  for (Design d : {Design::CLower, Design::CUpper, Design::DLower, Design::DUpper, Design::XLower}) {
    if (to_string(d) == name) return d;
  }
  throw Error(ErrorKind::Parse, "unknown design '" + std::string(name) + "'");
}

Log2Value union_log2_upper(const DimTuple& dims, const SequenceSet& seqs, const Rational& e) {
  return log2_sum_upper({
      cylinder_count_C(CParams{dims.r, dims.t, seqs.n}, e).log2_upper,
      cylinder_count_C(CParams{dims.u, dims.v, seqs.n}, e).log2_upper,
      count_E_upper(dims.w, seqs.j, e).log2_upper,
      // F_m lies in C_m(s, s)
      cylinder_count_C(CParams{dims.s, dims.s, seqs.n}, e).log2_upper,
  });
}

Profile designed_scale_profile(Design design, const DimTuple& dims, const SequenceSet& seqs,
                               std::pair<int, int> k_range) {
  check_k_range(k_range);
  Profile out;
  out.design = std::string(to_string(design));
  const CParams c{dims.r, dims.t, seqs.n};
  const CParams d{dims.u, dims.v, seqs.n};
  for (int k = k_range.first; k <= k_range.second; ++k) {
    const auto ku = static_cast<std::uint64_t>(k);
    const Integer lo = n_term(seqs, 2 * ku);
    const Integer hi = n_term(seqs, 2 * ku + 1);
    const std::string label = "k=" + std::to_string(k);
    switch (design) {
      case Design::CLower: {
        // one delta_k interval covers each level-n_{2k+1} cylinder
        const Rational e = Rational(hi - lo) / dims.r;
        const CountResult bounds = cylinder_count_C(c, e);
        out.samples.push_back(
            ProfileSample{label, e, bounds.log2_lower, Log2Value(Rational(hi)), e, std::nullopt, "designed-bounds"});
        break;
      }
      case Design::CUpper: {
        const Rational e = CModel(c).cumulative(small(lo, "n_{2k}"));
        out.samples.push_back(count_sample(label, e, cylinder_count_C(c, e)));
        break;
      }
      case Design::DLower: {
        const Rational e = Rational(hi - lo) / dims.u;
        out.samples.push_back(count_sample(label, e, count_D_lower(d, seqs.k, e)));
        break;
      }
      case Design::DUpper: {
        // delta_k = l_{n_{2k}-1}; D_{n_{2k}} holds 2^{n_{2k} - m(k)} points a delta_k apart
        const std::uint64_t level = small(lo, "n_{2k}") - 1;
        const Rational e = CModel(d).cumulative(level);
        const auto m = Sequence(seqs.k).last_index_at_most(lo);
        const Log2Value lower(Rational(lo - big(m.value_or(0))));
        out.samples.push_back(ProfileSample{label, e, lower, Log2Value(Rational(big(level))), e, std::nullopt,
                                            "designed-bounds"});
        break;
      }
      case Design::XLower: {
        const Rational e = Rational(hi - lo) / dims.u;
        const CountResult dl = count_D_lower(d, seqs.k, e);
        out.samples.push_back(ProfileSample{label, e, dl.log2_lower, union_log2_upper(dims, seqs, e), e,
                                            std::nullopt, "designed-bounds"});
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assouad

Profile assouad_profile(const SetApprox& target, const std::vector<RadicalNumber>& centers,
                        const std::vector<std::pair<Rational, Rational>>& pairs) {
  if (centers.empty()) throw Error(ErrorKind::OutOfRange, "assouad_profile needs at least one center");
  const auto segments = to_segments(target);
  Profile out;
  out.design = "pairs";
  for (const auto& [eR, er] : pairs) {
    Integer best = 0;
    for (const auto& x : centers) best = std::max(best, ball_restricted_count(segments, x, eR, er).exact);
    const Rational gap = er - eR;
    std::string label = label_of(eR) + ":" + label_of(er);
    if (best == 0) {  // no point of the set in any ball
      out.samples.push_back(ProfileSample{label, gap, Log2Value(0), Log2Value(0), gap, best, "greedy-ball"});
    } else {
      out.samples.push_back(exact_sample(label, gap, best, "greedy-ball"));
    }
  }
  return out;
}

Profile designed_assouad_E(const Rational& gamma, const SequenceSpec& jseq, const std::vector<std::uint64_t>& ns) {
  const Sequence j(jseq);
  Profile out;
  out.design = "E-pairs";
  for (std::uint64_t n : ns) {
    const Integer diff = j.term(n) - big(n);
    if (diff <= 0) continue;  // R = r
    const Rational gap = Rational(diff) / gamma;
    const Log2Value lower(Rational(std::max(Integer(0), Integer(diff - 1))));
    // 8 (R/r)^gamma
    const Log2Value upper(Rational(3 + diff));
    out.samples.push_back(ProfileSample{"n=" + std::to_string(n), gap, lower, upper, gap, std::nullopt,
                                        "designed-bounds"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// F restricted to a cylinder

Profile cylinder_restricted_box(const SetApprox& f_approx, const Word& w, const std::vector<Rational>& grid) {
  if (f_approx.family != Family::F) throw Error(ErrorKind::OutOfRange, "cylinder_restricted_box needs an F approximation");
  if (static_cast<int>(w.size()) > f_approx.depth) {
    throw Error(ErrorKind::InsufficientDepth, "V_" + w + " lies below the approximation depth");
  }
  SetApprox clipped = f_approx;
  clipped.intervals.clear();
  for (const auto& iv : f_approx.intervals) {
    if (iv.word.compare(0, w.size(), w) == 0) clipped.intervals.push_back(iv);
  }
  Profile out = box_profile(clipped, grid);
  out.design = "V_" + (w.empty() ? std::string("eps") : w);
  return out;
}

ProfileSample designed_restricted_box_F(const FParams& p, const Word& w) {
  const FModel model(p);
  const TreeIndex k = heap_index(w);
  const Integer depth = model.aseq().term(k) - 1;
  const Integer count_exp = depth - Integer(static_cast<unsigned long>(w.size()));
  if (count_exp < 0) throw Error(ErrorKind::OutOfRange, "a_{f(w)} - 1 is shallower than w");
  const Integer units = model.path_exponent_units(w, depth);
  const Rational e = model.units_to_exponent(units);
  // sibling gaps at that depth are delta (alpha - 2): a delta-interval meets
  // one cylinder when alpha > 3, two when 2 < alpha <= 3, three when alpha = 2
  const Log2Value log_alpha(1 / p.gamma);
  int meets = 3;
  if (log_alpha.compare(Log2Value(0, 3)) == std::partial_ordering::greater) {
    meets = 1;
  } else if (p.gamma < 1) {
    meets = 2;
  }
  const Log2Value upper{Rational(count_exp)};
  const Log2Value lower = meets == 1 ? upper : upper - Log2Value(0, meets);
  std::optional<Integer> exact;
  if (meets == 1 && count_exp <= 64) exact = Integer(1) << static_cast<mp_bitcnt_t>(count_exp.get_ui());
  const std::string label = (w.empty() ? std::string("eps") : w) + "@" + depth.get_str();
  return ProfileSample{label, e, lower, upper, e, exact, meets == 1 ? "designed-exact" : "designed-bounds"};
}

// ---------------------------------------------------------------------------
// local dimensions

namespace {

int auto_depth(const MeasureModel& m, const Rational& er) {
  const Rational need = er + 2;
  if (m.carrier == Carrier::C) return static_cast<int>(small(big(CModel(m.c).first_level_reaching(need)), "depth"));
  return static_cast<int>(small(ceil_of(need * m.f.gamma), "depth"));
}

ProfileSample mass_sample(std::string label, const Rational& er, const MassBound& mass) {
  // log mu / log r = -log2 mu / er; the upper mass gives the lower estimate
  const Log2Value lower = Log2Value(0) - Log2Value(0, mass.upper);
  if (mass.lower == 0) return ProfileSample{std::move(label), er, lower, lower, er, std::nullopt, "mass-one-sided"};
  const Log2Value upper = Log2Value(0) - Log2Value(0, mass.lower);
  return ProfileSample{std::move(label), er, lower, upper, er, std::nullopt, "mass-enclosure"};
}

}  // namespace

Profile local_dim_profile(const MeasureModel& m, const std::vector<RadicalNumber>& centers,
                          const std::vector<Rational>& radius_grid) {
  Profile out;
  out.design = "local";
  const auto radii = sorted_positive(radius_grid);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (const auto& er : radii) {
      const MassBound mass = ball_mass(centers[i], er, m, auto_depth(m, er));
      out.samples.push_back(mass_sample("x" + std::to_string(i) + ":" + label_of(er), er, mass));
    }
  }
  return out;
}

Profile designed_local_C(const CParams& p, std::pair<int, int> k_range) {
  check_k_range(k_range);
  const CModel model(p);
  Profile out;
  out.design = "C-radii";
  for (int k = k_range.first; k <= k_range.second; ++k) {
    const std::uint64_t n = small(model.nseq().term(2 * static_cast<std::uint64_t>(k) + 1), "n_{2k+1}");
    const Rational e = model.cumulative(n);
    const auto [mass_lo, mass_hi] = designed_log_mass_C(n);
    out.samples.push_back(ProfileSample{"k=" + std::to_string(k), e, Log2Value(0) - mass_hi, Log2Value(0) - mass_lo,
                                        e, std::nullopt, "designed-bounds"});
  }
  return out;
}

Profile designed_local_F(const FParams& p, const std::vector<int>& prefix_lengths) {
  const FModel model(p);
  const MeasureModel m = MeasureModel::on_F(p);
  Profile out;
  out.design = "F-radii";
  constexpr int kDescentCap = 256;
  for (int i : prefix_lengths) {
    if (i < 0 || i > 62) throw Error(ErrorKind::OutOfRange, "prefix length out of range");
    const TreeIndex index = TreeIndex{1} << i;  // f(0^i)
    const Integer a = model.aseq().term(index);
    const Integer b = model.bseq().term(index);
    const Rational er = model.units_to_exponent(b);
    const std::string label = "m=" + std::to_string(index);
    const Integer depth = ceil_of((er + 2) * p.gamma);
    if (depth <= kDescentCap) {
      out.samples.push_back(mass_sample(label, er, ball_mass(RadicalNumber(0), er, m, static_cast<int>(depth.get_si()))));
      continue;
    }
    // B(0, r) holds the level-a cylinder of 0 and meets at most three of that level
    const Log2Value lower = Log2Value(Rational(a)) - Log2Value(0, 3);
    out.samples.push_back(ProfileSample{label, er, lower, Log2Value(Rational(a)), er, std::nullopt, "designed-bounds"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// the six checks

bool TheoremReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult make_check(std::string name, const Rational& target, const Rational& tolerance,
                       std::pair<double, double> measured, std::string method, Profile profile) {
  CheckResult out;
  out.name = std::move(name);
  out.target = target;
  out.tolerance = tolerance;
  out.measured_lower = measured.first;
  out.measured_upper = measured.second;
  out.method = std::move(method);
  out.regime = profile.samples.empty() ? "none" : profile.samples.back().regime;
  const double t = target.get_d();
  const double tol = tolerance.get_d();
  out.pass = !profile.samples.empty() && measured.first - tol <= t && t <= measured.second + tol;
  out.profile = std::move(profile);
  return out;
}

std::vector<Word> words_up_to(int length) {
  std::vector<Word> out;
  for (TreeIndex k = 1; k < (TreeIndex{1} << (length + 1)); ++k) out.push_back(heap_word(k));
  return out;
}

}  // namespace

TheoremReport verify_theorem(const DimTuple& dims, const SequenceSet& seqs, const Budgets& budgets) {
  const DimTuple targets = budgets.targets.value_or(dims);
  const Tolerances& tol = budgets.tolerances;
  const CParams c{dims.r, dims.t, seqs.n};
  TheoremReport report;

  {
    Profile p = designed_local_C(c, budgets.k_range);
    const auto measured = p.samples.back().range();
    report.checks.push_back(make_check("hausdorff", targets.r, tol.hausdorff, measured,
                                       "local dimension of the natural measure on C at radii l_{n_{2k+1}}",
                                       std::move(p)));
  }
  {
    // surrogate: lower box dimension of F inside each V_w at its designed scale
    Profile p;
    p.design = "V_w designed scales";
    for (const Word& w : words_up_to(budgets.f_word_length)) {
      p.samples.push_back(designed_restricted_box_F(FParams{dims.s, seqs.a, seqs.b}, w));
    }
    const auto measured = p.summary().min;
    report.checks.push_back(make_check("lower-modified-box", targets.s, tol.modified_box, measured,
                                       "minimum over cylinders V_w of the restricted box quotient on F (surrogate)",
                                       std::move(p)));
  }
  {
    Profile p = designed_scale_profile(Design::CUpper, dims, seqs, budgets.k_range);
    const auto measured = p.samples.back().range();
    report.checks.push_back(make_check("packing", targets.t, tol.packing, measured,
                                       "upper box quotient of C at scales l_{n_{2k}} (surrogate)", std::move(p)));
  }
  {
    Profile p = designed_scale_profile(Design::XLower, dims, seqs, budgets.k_range);
    const auto measured = p.samples.back().range();
    report.checks.push_back(make_check("lower-box", targets.u, tol.lower_box, measured,
                                       "D lower count against the four-part union upper count at "
                                       "delta_k = 2^{-(n_{2k+1} - n_{2k})/u}",
                                       std::move(p)));
  }
  {
    Profile p = designed_scale_profile(Design::DUpper, dims, seqs, budgets.k_range);
    for (auto& s : p.samples) {
      s.num_upper = union_log2_upper(dims, seqs, s.scale);
      s.regime = "designed-bounds-union";
    }
    const auto measured = p.samples.back().range();
    report.checks.push_back(make_check("upper-box", targets.v, tol.upper_box, measured,
                                       "D lower count against the four-part union upper count at "
                                       "delta_k = l_{n_{2k} - 1}",
                                       std::move(p)));
  }
  {
    Profile p = designed_assouad_E(dims.w, seqs.j, budgets.assouad_ns);
    // every part sits in some C(g, g) with g among t, v, w, s
    const Rational g = std::max({dims.t, dims.v, dims.w, dims.s});
    for (auto& s : p.samples) s.num_upper = Log2Value(3 + s.scale * g);
    const auto measured = p.samples.empty() ? std::pair<double, double>{0, 0} : p.samples.back().range();
    report.checks.push_back(make_check("assouad", targets.w, tol.assouad, measured,
                                       "E ball counts at pairs (l_n, l_{j_n}) against 8 (R/r)^g over the parts",
                                       std::move(p)));
  }
  return report;
}

}  // namespace dimlab
