#include "dimlab/cli.hpp"

#include "dimlab/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <random>
#include <sstream>

namespace dimlab {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string config;
  std::string set = "C";
  int depth = -1;
  std::string out;
  std::string delta_exp;
  std::string ball;
  std::string csv;
  std::string kind = "box";
  std::string word = "0";
  int centers = 16;
};

RadicalNumber dyadic(const Rational& x) {
  const Integer& q = x.get_den();
  if ((q & (q - 1)) != 0) throw Error(ErrorKind::Config, "ball centers must be dyadic rationals");
  return RadicalNumber(x.get_num()).scaled(Rational(static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1));
}

CParams c_params(const Config& c) { return CParams{c.dims.r, c.dims.t, c.sequences.n}; }
CParams d_params(const Config& c) { return CParams{c.dims.u, c.dims.v, c.sequences.n}; }
FParams f_params(const Config& c) { return FParams{c.dims.s, c.sequences.a, c.sequences.b}; }

SetApprox build_family(const Config& c, Family family, int depth_override) {
  Depths d = c.depths;
  if (depth_override >= 0) d = Depths{depth_override, depth_override, depth_override, depth_override};
  switch (family) {
    case Family::C: return build_C(c_params(c), d.c);
    case Family::D: return build_D(d_params(c), c.sequences.k, d.d, c.stars);
    case Family::E: return build_E(c.dims.w, c.sequences.j, d.e, c.stars);
    case Family::F: return build_F(f_params(c), d.f);
    case Family::X: return build_X(c.dims, c.sequences, d, c.stars);
  }
  throw Error(ErrorKind::Config, "unknown family");
}

// Finest scale exponent at which the geometry stands for the set itself.
Rational resolution(const Config& c, const SetApprox& s) {
  switch (s.family) {
    case Family::C: return CModel(c_params(c)).cumulative(static_cast<std::uint64_t>(s.depth));
    case Family::D: return CModel(d_params(c)).cumulative(static_cast<std::uint64_t>(s.depth));
    case Family::E: return Rational(s.depth) / c.dims.w;
    case Family::F: {
      std::optional<Rational> coarsest;
      for (const auto& iv : s.intervals) {
        if (!coarsest || iv.log_length < *coarsest) coarsest = iv.log_length;
      }
      return coarsest.value_or(Rational(0));
    }
    case Family::X: {
      Rational r = resolution(c, s.parts.front());
      for (const auto& p : s.parts) r = std::min(r, resolution(c, p));
      return r;
    }
  }
  return Rational(0);
}

CountResult count_deep(const Config& c, Family family, const Rational& e) {
  switch (family) {
    case Family::C: return cylinder_count_C(c_params(c), e);
    case Family::D: return count_D_lower(d_params(c), c.sequences.k, e);
    case Family::E: return count_E_upper(c.dims.w, c.sequences.j, e);
    case Family::X: {
      const auto lower = count_D_lower(d_params(c), c.sequences.k, e).log2_lower;
      return CountResult::bounds(lower, union_log2_upper(c.dims, c.sequences, e), "bounds-union");
    }
    case Family::F: break;
  }
  throw Error(ErrorKind::InsufficientDepth, "F has no deep-scale bound; raise depths.F");
}

std::string describe(const CountResult& r) {
  std::ostringstream s;
  s << "mode=" << to_string(r.mode);
  if (r.mode == CountMode::Exact) {
    s << " count=" << r.exact.get_str();
  } else {
    s << " log2_lower=" << r.log2_lower.to_string() << " log2_upper=" << r.log2_upper.to_string();
  }
  s << " regime=" << r.regime;
  return s.str();
}

std::vector<std::uint64_t> sample_bits(std::mt19937_64& rng, int count) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(rng());
  return out;
}

Word random_word(std::uint64_t bits, int length) {
  Word w;
  for (int i = 0; i < length; ++i) w.push_back(static_cast<char>('0' + ((bits >> (i % 64)) & 1)));
  return w;
}

int cmd_validate(const Config& c, std::ostream& out) {
  bool ok = true;
  try {
    validate_dim_tuple(c.dims.as_array());
    out << "dims ok\n";
  } catch (const Error& e) {
    out << "dims FAIL " << e.what() << '\n';
    ok = false;
  }
  const auto report = validate_sequences(c.sequences, c.horizon);
  for (const auto& cond : report.conditions) {
    out << (cond.pass ? "PASS " : "FAIL ") << cond.name << " worst=" << decimal12(cond.worst);
    if (!cond.detail.empty()) out << " (" << cond.detail << ')';
    out << '\n';
  }
  ok = ok && report.all_pass();
  return ok ? kOk : kFailed;
}

int cmd_build(const Config& c, const Options& o, std::ostream& out) {
  const auto set = build_family(c, parse_family(o.set), o.depth);
  const std::string text = to_json(set, c.precision_bits).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    out << "wrote " << o.out << " (" << set.cardinality() << " components)\n";
  }
  return kOk;
}

int cmd_count(const Config& c, const Options& o, std::ostream& out) {
  const Family family = parse_family(o.set);
  const Rational e = parse_rational(o.delta_exp);
  CountResult result;
  if (!o.ball.empty()) {
    const auto comma = o.ball.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::Config, "--ball expects x,R");
    const RadicalNumber x = dyadic(parse_rational(o.ball.substr(0, comma)));
    const Rational eR = parse_rational(o.ball.substr(comma + 1));
    result = ball_restricted_count(to_segments(build_family(c, family, o.depth)), x, eR, e);
  } else if (e <= 0) {
    result = CountResult::exact_count(Integer(1), "trivial");
  } else {
    const auto set = build_family(c, family, o.depth);
    result = resolution(c, set) >= e ? greedy_cover_count(set, e) : count_deep(c, family, e);
  }
  out << "set=" << o.set << " delta_exp=" << to_fraction_string(e) << ' ' << describe(result) << '\n';
  if (!o.csv.empty()) write_file(o.csv, count_csv_header() + count_csv_row(e, result));
  return kOk;
}

int cmd_estimate(const Config& c, const Options& o, std::ostream& out) {
  const Family family = parse_family(o.set);
  std::mt19937_64 rng(c.seed);
  Profile profile;
  if (o.kind == "box") {
    profile = box_profile(build_family(c, family, o.depth), c.box_grid);
  } else if (o.kind == "assouad") {
    const auto set = build_family(c, family, o.depth);
    const auto segments = to_segments(set);
    if (segments.empty()) throw Error(ErrorKind::InsufficientDepth, "empty geometry");
    std::vector<RadicalNumber> centers;
    for (auto bits : sample_bits(rng, o.centers)) centers.push_back(segments[bits % segments.size()].lo);
    profile = assouad_profile(set, centers, c.pair_grid);
  } else if (o.kind == "local") {
    if (family != Family::C && family != Family::F) throw Error(ErrorKind::Config, "local needs --set C or F");
    const int depth = o.depth >= 0 ? o.depth : (family == Family::C ? c.depths.c : c.depths.f);
    std::vector<RadicalNumber> centers;
    MeasureModel m = family == Family::C ? MeasureModel::on_C(c_params(c)) : MeasureModel::on_F(f_params(c));
    const auto set = build_family(c, family, depth);
    for (auto bits : sample_bits(rng, o.centers)) {
      const Word w = random_word(bits, depth);
      for (const auto& iv : set.intervals) {
        if (iv.word == w) centers.push_back(iv.left);
      }
    }
    profile = local_dim_profile(m, centers, c.box_grid);
  } else if (o.kind == "cylinder-box") {
    if (family != Family::F) throw Error(ErrorKind::Config, "cylinder-box needs --set F");
    profile = cylinder_restricted_box(build_family(c, family, o.depth), o.word, c.box_grid);
  } else {
    throw Error(ErrorKind::Config, "unknown estimate kind '" + o.kind + "'");
  }
  const std::string text = profile_csv(profile);
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    const auto s = profile.summary();
    out << "wrote " << o.out << " (" << profile.samples.size() << " samples, min " << decimal12(s.min.first)
        << ", max " << decimal12(s.max.second) << ")\n";
  }
  return kOk;
}

std::string sidecar(const std::string& report_path, const std::string& check) {
  std::filesystem::path p(report_path);
  return (p.parent_path() / (p.stem().string() + "." + check + ".csv")).string();
}

int cmd_verify(const Config& c, const Options& o, std::ostream& out) {
  validate_dim_tuple(c.dims.as_array());
  const auto report = verify_theorem(c.dims, c.sequences, c.budgets);
  auto doc = to_json(report);
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const auto& check = report.checks[i];
    if (!o.out.empty()) {
      const auto path = sidecar(o.out, check.name);
      write_file(path, profile_csv(check.profile));
      doc["checks"][i]["profileCsv"] = std::filesystem::path(path).filename().string();
    }
    out << (check.pass ? "PASS " : "FAIL ") << check.name << " target=" << to_fraction_string(check.target)
        << " measured=[" << decimal12(check.measured_lower) << ", " << decimal12(check.measured_upper)
        << "] tol=" << to_fraction_string(check.tolerance) << " regime=" << check.regime << '\n';
  }
  if (!o.out.empty()) write_file(o.out, doc.dump(2) + "\n");
  return report.all_pass() ? kOk : kFailed;
}

int cmd_export_plot(const Config& c, const Options& o, std::ostream& out) {
  const std::filesystem::path dir(o.out.empty() ? "." : o.out);
  std::filesystem::create_directories(dir);
  for (Design d : {Design::CLower, Design::CUpper, Design::DLower, Design::DUpper, Design::XLower}) {
    const auto path = (dir / (std::string(to_string(d)) + ".csv")).string();
    write_file(path, profile_csv(designed_scale_profile(d, c.dims, c.sequences, c.budgets.k_range)));
    out << "wrote " << path << '\n';
  }
  const auto box = (dir / "C-box.csv").string();
  write_file(box, profile_csv(box_profile(c_params(c), c.box_grid)));
  out << "wrote " << box << '\n';
  const auto local = (dir / "C-local.csv").string();
  write_file(local, profile_csv(designed_local_C(c_params(c), c.budgets.k_range)));
  out << "wrote " << local << '\n';
  return kOk;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::Config || kind == ErrorKind::Parse || kind == ErrorKind::UnsupportedGenerator ? kUsage
                                                                                                           : kFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dimlab: finite approximations of sets with prescribed dimensions"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check the dimension tuple and sequences");
  auto* build = app.add_subcommand("build", "write a SetApprox JSON document");
  auto* count = app.add_subcommand("count", "covering number at scale 2^-e");
  auto* estimate = app.add_subcommand("estimate", "dimension profile as CSV");
  auto* verify = app.add_subcommand("verify-theorem", "run the six dimension checks");
  auto* plot = app.add_subcommand("export-plot", "write designed-sequence profiles as CSV");
  for (auto* sub : {validate, build, count, estimate, verify, plot}) {
    sub->add_option("config", o.config, "JSON config")->required();
  }
  for (auto* sub : {build, count, estimate}) {
    sub->add_option("--set", o.set, "C, D, E, F or X");
    sub->add_option("--depth", o.depth, "construction depth (overrides the config)");
  }
  build->add_option("--out", o.out, "output path (stdout if omitted)");
  count->add_option("--delta-exp", o.delta_exp, "scale exponent p/q, delta = 2^-e")->required();
  count->add_option("--ball", o.ball, "restrict to B(x, 2^-R), given as x,R");
  count->add_option("--csv", o.csv, "also write a CSV row");
  estimate->add_option("--kind", o.kind, "box, assouad, local or cylinder-box");
  estimate->add_option("--word", o.word, "cylinder word for cylinder-box");
  estimate->add_option("--centers", o.centers, "sampled centers for assouad/local");
  estimate->add_option("--out", o.out, "CSV path (stdout if omitted)");
  verify->add_option("--out", o.out, "report JSON path; CSV sidecars sit next to it");
  plot->add_option("--out", o.out, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const Config c = load_config(o.config);
    RadicalNumber::set_precision_limit(std::max<mpfr_prec_t>(RadicalNumber::precision_limit(), c.precision_bits));
    if (*validate) return cmd_validate(c, out);
    if (*build) return cmd_build(c, o, out);
    if (*count) return cmd_count(c, o, out);
    if (*estimate) return cmd_estimate(c, o, out);
    if (*verify) return cmd_verify(c, o, out);
    if (*plot) return cmd_export_plot(c, o, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace dimlab
