#include "dimlab/io.hpp"

#include <climits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dimlab {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Config, what); }

void check_keys(const ordered_json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) fail("unknown key '" + item.key() + "' in " + where);
  }
}

Rational exact_field(const ordered_json& v, const std::string& where) {
  if (v.is_number_float()) fail(where + " must be an exact string such as \"3/10\", not a float");
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (!v.is_string()) fail(where + " must be a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
}

Integer integer_field(const ordered_json& v, const std::string& where) {
  const Rational q = exact_field(v, where);
  if (q.get_den() != 1) fail(where + " must be an integer");
  return q.get_num();
}

long small_int(const ordered_json& v, const std::string& where, long lo, long hi) {
  if (!v.is_number_integer()) fail(where + " must be a JSON integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) fail(where + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<long>(x);
}

SequenceSpec sequence_field(const ordered_json& v, SequenceRole role) {
  const std::string where = "sequences." + std::string(to_string(role));
  check_keys(v, where, {"generator", "terms"});
  SequenceSpec spec = SequenceSpec::defaults(role);
  if (v.contains("terms")) {
    if (v.contains("generator") && v["generator"] != "explicit") fail(where + ": terms require generator explicit");
    if (!v["terms"].is_array() || v["terms"].empty()) fail(where + ".terms must be a non-empty array");
    spec.generator = Generator::Explicit;
    for (const auto& t : v["terms"]) spec.terms.push_back(integer_field(t, where + ".terms"));
  } else if (v.contains("generator")) {
    if (!v["generator"].is_string()) fail(where + ".generator must be a string");
    try {
      spec.generator = parse_generator(v["generator"].get<std::string>());
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    }
    if (spec.generator == Generator::Explicit) fail(where + ": explicit generator needs terms");
  }
  return spec;
}

DimTuple tuple_field(const ordered_json& v, const std::string& where) {
  check_keys(v, where, {"r", "s", "t", "u", "v", "w"});
  DimTuple d;
  Rational* slots[6] = {&d.r, &d.s, &d.t, &d.u, &d.v, &d.w};
  const char* names[6] = {"r", "s", "t", "u", "v", "w"};
  for (int i = 0; i < 6; ++i) {
    if (!v.contains(names[i])) fail(where + "." + names[i] + " is missing");
    *slots[i] = exact_field(v[names[i]], where + "." + names[i]);
  }
  return d;
}

std::vector<Rational> default_box_grid() {
  std::vector<Rational> out;
  for (int e = 1; e <= 20; ++e) out.emplace_back(e);
  return out;
}

}  // namespace

Config parse_config(const ordered_json& doc) {
  check_keys(doc, "config",
             {"schema", "dims", "sequences", "precisionBits", "depths", "grids", "kRange", "tolerances", "targets",
              "assouadN", "fWordLength", "starSemantics", "seed", "horizon"});
  if (!doc.contains("schema") || doc["schema"] != kSchema) fail(std::string("schema must be \"") + kSchema + "\"");
  if (!doc.contains("dims")) fail("dims is missing");

  Config c;
  c.dims = tuple_field(doc["dims"], "dims");
  c.box_grid = default_box_grid();
  c.pair_grid = {{Rational(1), Rational(4)}, {Rational(2), Rational(6)}, {Rational(2), Rational(8)}};

  if (doc.contains("sequences")) {
    const auto& s = doc["sequences"];
    check_keys(s, "sequences", {"n", "k", "j", "a", "b"});
    if (s.contains("n")) c.sequences.n = sequence_field(s["n"], SequenceRole::n);
    if (s.contains("k")) c.sequences.k = sequence_field(s["k"], SequenceRole::k);
    if (s.contains("j")) c.sequences.j = sequence_field(s["j"], SequenceRole::j);
    if (s.contains("a")) c.sequences.a = sequence_field(s["a"], SequenceRole::a);
    if (s.contains("b")) c.sequences.b = sequence_field(s["b"], SequenceRole::b);
  }
  if (doc.contains("precisionBits")) c.precision_bits = small_int(doc["precisionBits"], "precisionBits", 64, 1 << 20);
  if (const char* env = std::getenv("DIMLAB_PRECISION_BITS"); env && *env) {
    c.precision_bits = small_int(ordered_json::parse(env, nullptr, false), "DIMLAB_PRECISION_BITS", 64, 1 << 20);
  }
  if (doc.contains("depths")) {
    const auto& d = doc["depths"];
    check_keys(d, "depths", {"C", "D", "E", "F"});
    if (d.contains("C")) c.depths.c = static_cast<int>(small_int(d["C"], "depths.C", 0, 1000));
    if (d.contains("D")) c.depths.d = static_cast<int>(small_int(d["D"], "depths.D", 0, 1000));
    if (d.contains("E")) c.depths.e = static_cast<int>(small_int(d["E"], "depths.E", 0, 1000));
    if (d.contains("F")) c.depths.f = static_cast<int>(small_int(d["F"], "depths.F", 0, 1000));
  }
  if (doc.contains("grids")) {
    const auto& g = doc["grids"];
    check_keys(g, "grids", {"box", "pairs"});
    if (g.contains("box")) {
      if (!g["box"].is_array() || g["box"].empty()) fail("grids.box must be a non-empty array");
      c.box_grid.clear();
      for (const auto& e : g["box"]) {
        c.box_grid.push_back(exact_field(e, "grids.box"));
        if (c.box_grid.back() <= 0) fail("grids.box entries must be positive");
      }
    }
    if (g.contains("pairs")) {
      if (!g["pairs"].is_array()) fail("grids.pairs must be an array");
      c.pair_grid.clear();
      for (const auto& p : g["pairs"]) {
        if (!p.is_array() || p.size() != 2) fail("grids.pairs entries must be [eR, er]");
        const Rational eR = exact_field(p[0], "grids.pairs");
        const Rational er = exact_field(p[1], "grids.pairs");
        if (er <= eR) fail("grids.pairs needs er > eR");
        c.pair_grid.emplace_back(eR, er);
      }
    }
  }
  if (doc.contains("kRange")) {
    const auto& k = doc["kRange"];
    if (!k.is_array() || k.size() != 2) fail("kRange must be [first, last]");
    const int a = static_cast<int>(small_int(k[0], "kRange", 0, 64));
    const int b = static_cast<int>(small_int(k[1], "kRange", 0, 64));
    if (a > b) fail("kRange must satisfy first <= last");
    c.budgets.k_range = {a, b};
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    check_keys(t, "tolerances", {"hausdorff", "lowerModifiedBox", "packing", "lowerBox", "upperBox", "assouad"});
    auto set = [&](const char* key, Rational& slot) {
      if (!t.contains(key)) return;
      slot = exact_field(t[key], std::string("tolerances.") + key);
      if (slot < 0) fail(std::string("tolerances.") + key + " must be non-negative");
    };
    auto& tol = c.budgets.tolerances;
    set("hausdorff", tol.hausdorff);
    set("lowerModifiedBox", tol.modified_box);
    set("packing", tol.packing);
    set("lowerBox", tol.lower_box);
    set("upperBox", tol.upper_box);
    set("assouad", tol.assouad);
  }
  if (doc.contains("targets")) c.budgets.targets = tuple_field(doc["targets"], "targets");
  if (doc.contains("assouadN")) {
    const auto& a = doc["assouadN"];
    if (!a.is_array() || a.empty()) fail("assouadN must be a non-empty array");
    c.budgets.assouad_ns.clear();
    for (const auto& n : a) {
      const Integer x = integer_field(n, "assouadN");
      if (x < 1 || !x.fits_ulong_p()) fail("assouadN entries must be positive machine integers");
      c.budgets.assouad_ns.push_back(x.get_ui());
    }
  }
  if (doc.contains("fWordLength")) c.budgets.f_word_length = static_cast<int>(small_int(doc["fWordLength"], "fWordLength", 0, 12));
  if (doc.contains("starSemantics")) {
    if (!doc["starSemantics"].is_string()) fail("starSemantics must be a string");
    try {
      c.stars = parse_star_semantics(doc["starSemantics"].get<std::string>());
    } catch (const Error& e) {
      fail(std::string("starSemantics: ") + e.what());
    }
  }
  if (doc.contains("seed")) c.seed = static_cast<std::uint64_t>(small_int(doc["seed"], "seed", 0, LONG_MAX));
  if (doc.contains("horizon")) c.horizon = static_cast<std::uint64_t>(small_int(doc["horizon"], "horizon", 2, 4096));
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto doc = ordered_json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) fail("config '" + path + "' is not valid JSON");
  return parse_config(doc);
}

ordered_json default_config_json() {
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["dims"] = {{"r", "3/10"}, {"s", "2/5"}, {"t", "1/2"}, {"u", "3/5"}, {"v", "7/10"}, {"w", "4/5"}};
  ordered_json seqs;
  for (auto role : {SequenceRole::n, SequenceRole::k, SequenceRole::j, SequenceRole::a, SequenceRole::b}) {
    seqs[std::string(to_string(role))] = {{"generator", std::string(to_string(SequenceSpec::defaults(role).generator))}};
  }
  doc["sequences"] = seqs;
  doc["precisionBits"] = 256;
  doc["depths"] = {{"C", 12}, {"D", 10}, {"E", 12}, {"F", 12}};
  ordered_json box = ordered_json::array();
  for (const auto& e : default_box_grid()) box.push_back(to_fraction_string(e));
  ordered_json pairs = ordered_json::array();
  for (const auto& [eR, er] : {std::pair{"1/1", "4/1"}, std::pair{"2/1", "6/1"}, std::pair{"2/1", "8/1"}}) {
    pairs.push_back(ordered_json::array({eR, er}));
  }
  doc["grids"] = {{"box", box}, {"pairs", pairs}};
  doc["kRange"] = ordered_json::array({1, 2});
  doc["tolerances"] = {{"hausdorff", "1/1000"}, {"lowerModifiedBox", "1/10"}, {"packing", "1/100"},
                       {"lowerBox", "1/1000"},  {"upperBox", "1/100"},        {"assouad", "1/10"}};
  doc["assouadN"] = ordered_json::array({"3", "10", "100", "1000", "1000000"});
  doc["fWordLength"] = 4;
  doc["starSemantics"] = "skeleton";
  doc["seed"] = 1;
  doc["horizon"] = 32;
  return doc;
}

ordered_json position_json(const RadicalNumber& value, long precision_bits, long target_bits) {
  for (auto prec = static_cast<mpfr_prec_t>(precision_bits); prec <= RadicalNumber::precision_limit(); prec *= 2) {
    const Enclosure enc = value.enclose(prec);
    ordered_json out;
    Integer mantissa;
    mpfr_exp_t exponent = 0;
    if (!mpfr_zero_p(enc.lo.get())) exponent = mpfr_get_z_2exp(mantissa.get_mpz_t(), enc.lo.get());
    // canonical form: odd mantissa (or zero with exponent 0)
    if (mantissa == 0) {
      exponent = 0;
    } else {
      const auto tz = mpz_scan1(mantissa.get_mpz_t(), 0);
      mpz_fdiv_q_2exp(mantissa.get_mpz_t(), mantissa.get_mpz_t(), tz);
      exponent += static_cast<mpfr_exp_t>(tz);
    }
    out["mantissaHex"] = (mantissa < 0 ? "-0x" : "0x") + Integer(abs(mantissa)).get_str(16);
    out["exponent"] = static_cast<long>(exponent);
    if (enc.is_point()) {
      out["errorRadiusExponent"] = nullptr;
      return out;
    }
    BigFloat width(64);
    mpfr_sub(width.get(), enc.hi.get(), enc.lo.get(), MPFR_RNDU);
    const long radius = static_cast<long>(mpfr_get_exp(width.get()));  // width < 2^radius
    if (radius <= -target_bits) {
      out["errorRadiusExponent"] = radius;
      return out;
    }
  }
  throw Error(ErrorKind::PrecisionBudgetExceeded,
              "position could not be certified to 2^-" + std::to_string(target_bits) + " within the precision limit");
}

ordered_json to_json(const SetApprox& set, long precision_bits) {
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["family"] = std::string(to_string(set.family));
  doc["depth"] = set.depth;
  doc["implicit"] = set.implicit;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : set.params) params[key] = value;
  doc["params"] = params;
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : set.intervals) {
    const long target = static_cast<long>(ceil_of(iv.log_length).get_si()) + 10;
    intervals.push_back({{"word", iv.word},
                         {"lengthExponent", to_fraction_string(iv.log_length)},
                         {"left", position_json(iv.left, precision_bits, target)}});
  }
  doc["intervals"] = intervals;
  ordered_json points = ordered_json::array();
  for (const auto& pt : set.points) {
    points.push_back({{"word", pt.word},
                      {"endpoint", pt.endpoint},
                      {"level", pt.level},
                      {"coordinate", position_json(pt.coordinate, precision_bits, 64)}});
  }
  doc["points"] = points;
  ordered_json parts = ordered_json::array();
  for (const auto& part : set.parts) parts.push_back(to_json(part, precision_bits));
  doc["parts"] = parts;
  return doc;
}

ordered_json to_json(const TheoremReport& report) {
  ordered_json doc;
  doc["schema"] = kSchema;
  doc["allPass"] = report.all_pass();
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"target", to_fraction_string(c.target)},
                      {"tolerance", to_fraction_string(c.tolerance)},
                      {"measured_lower", c.measured_lower},
                      {"measured_upper", c.measured_upper},
                      {"method", c.method},
                      {"citation", c.method},
                      {"regime", c.regime},
                      {"pass", c.pass},
                      {"design", c.profile.design},
                      {"samples", c.profile.samples.size()}});
  }
  doc["checks"] = checks;
  return doc;
}

std::string decimal12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string count_csv_header() { return "scale_exponent,mode,count_exact,log2_lower,log2_upper,regime\n"; }

std::string count_csv_row(const Rational& e, const CountResult& c) {
  std::ostringstream out;
  out << to_fraction_string(e) << ',' << (c.mode == CountMode::Exact ? "exact" : "bounds") << ',';
  if (c.mode == CountMode::Exact) out << c.exact.get_str();
  out << ',' << c.log2_lower.to_string() << ',' << c.log2_upper.to_string() << ',' << c.regime << '\n';
  return out.str();
}

std::string profile_csv(const Profile& profile) {
  std::ostringstream out;
  out << "label,scale,estimate_lower,estimate_upper,numerator_lower,numerator_upper,denominator,count_exact,regime\n";
  for (const auto& s : profile.samples) {
    const auto [lo, hi] = s.range();
    out << s.label << ',' << to_fraction_string(s.scale) << ',' << decimal12(lo) << ',' << decimal12(hi) << ','
        << s.num_lower.to_string() << ',' << s.num_upper.to_string() << ',' << to_fraction_string(s.denominator)
        << ',' << (s.exact ? s.exact->get_str() : "") << ',' << s.regime << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path + "'");
  out << text;
  if (!out) fail("write to '" + path + "' failed");
}

}  // namespace dimlab
