// One line per acceptance criterion; exit status 1 if any line fails.

#include "dimlab/cli.hpp"
#include "dimlab/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace dimlab;

namespace {

struct Line {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

Rational q(const char* text) { return parse_rational(text); }

double log2_of(const Integer& n) { return std::log2(n.get_d()); }

// Admissibility from the set definition: collect forced-star positions.
bool omega_oracle(const std::string& w, const Sequence& k) {
  const std::size_t n = w.size();
  std::vector<bool> must_star(n + 1, false);
  for (std::size_t i = 1; i <= n; ++i) {
    if (w[i - 1] != '1') continue;
    const Integer ki = k.term(i);
    if (ki >= Integer(static_cast<unsigned long>(n))) continue;
    for (std::size_t j = ki.get_ui() + 1; j <= n; ++j) must_star[j] = true;
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (must_star[j] && w[j - 1] != '*') return false;
  }
  return true;
}

// Minimal cover of integer segments by closed length-d intervals, by
// branching on the placement that hits the leftmost uncovered atom.
int brute_cover(const std::vector<std::pair<int, int>>& segs, int d) {
  std::vector<std::pair<int, int>> atoms;
  for (auto [lo, hi] : segs) {
    for (int x = lo; x <= hi; ++x) {
      atoms.emplace_back(x, 0);
      if (x < hi) atoms.emplace_back(x, 1);
    }
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  int best = static_cast<int>(atoms.size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t first, int used) {
    if (used >= best) return;
    if (first == atoms.size()) {
      best = used;
      return;
    }
    const auto [x, cell] = atoms[first];
    for (int a = x - d + cell; a <= x; ++a) {
      std::size_t next = first;
      while (next < atoms.size()) {
        const auto [y, c] = atoms[next];
        if (y < a || y + c > a + d) break;
        ++next;
      }
      rec(next, used + 1);
    }
  };
  rec(0, 0);
  return best;
}

void criterion1(Line& L) {
  std::vector<std::string> layer{""};
  std::size_t words = 0;
  for (int len = 0; len <= 20; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      const TreeIndex k = heap_index(w);
      L.require(heap_word(k) == w, "heap round trip " + w);
      if (len >= 1 && len <= 12) L.require(parent_index(k) == heap_index(w.substr(0, w.size() - 1)), "parent " + w);
      ++words;
      if (len < 20) {
        next.push_back(w + '0');
        next.push_back(w + '1');
      }
    }
    layer = std::move(next);
  }
  const Sequence k(SequenceSpec::defaults(SequenceRole::k));
  L.require(omega_cardinality(2, k) == 7 && omega_enumerate(2, k).size() == 7, "|Omega_2| = 7");
  std::vector<std::string> all{""};
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) {
      std::vector<std::string> next;
      for (const auto& w : all) {
        for (char c : {'0', '1', '*'}) next.push_back(w + c);
      }
      all = std::move(next);
    }
    std::vector<std::string> expected;
    for (const auto& w : all) {
      if (omega_oracle(w, k)) expected.push_back(w);
    }
    auto got = omega_enumerate(n, k);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    L.require(got == expected, "Omega_" + std::to_string(n) + " vs oracle");
  }
  L.detail << words << " words round-tripped; Omega_n matched for n <= 12";
}

template <typename Strict>
void check_level(Line& L, const SetApprox& child, const SetApprox& parent, Strict strict, const char* name) {
  L.require(child.intervals.size() == (std::size_t{1} << child.depth), std::string(name) + " cardinality");
  for (std::size_t i = 0; i < child.intervals.size(); ++i) {
    const Interval& iv = child.intervals[i];
    if (child.depth > 0) {
      const Interval& up = parent.intervals[i / 2];
      L.require(iv.word.substr(0, iv.word.size() - 1) == up.word, std::string(name) + " parent word " + iv.word);
      L.require(iv.left >= up.left && iv.right() <= up.right(), std::string(name) + " nesting " + iv.word);
    }
    if (i + 1 < child.intervals.size()) {
      L.require(strict(iv.right(), child.intervals[i + 1].left), std::string(name) + " disjointness " + iv.word);
    }
  }
}

void criterion2(Line& L) {
  const CParams c{q("3/10"), q("1/2")};
  const FParams f{q("2/5")};
  SetApprox prev_c = build_C(c, 0), prev_f = build_F(f, 0);
  for (int d = 0; d <= 16; ++d) {
    const SetApprox cur_c = build_C(c, d), cur_f = build_F(f, d);
    check_level(L, cur_c, prev_c, [](const RadicalNumber& a, const RadicalNumber& b) { return a < b; }, "C");
    check_level(L, cur_f, prev_f, [](const RadicalNumber& a, const RadicalNumber& b) { return a <= b; }, "F");
    prev_c = cur_c;
    prev_f = cur_f;
  }
  const FModel model(f);
  for (TreeIndex k = 2; k <= 31; ++k) {
    const Integer depth = model.aseq().term(k) - 1;
    L.require(model.component_units(k) == model.path_exponent_units(heap_word(k), depth),
              "component formula k = " + std::to_string(k));
  }
  L.detail << "C(3/10,1/2) and F(2/5) to depth 16; l_k formula for k <= 31";
}

void criterion3(Line& L) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int components = 1 + static_cast<int>(rng() % 12);
    std::vector<std::pair<int, int>> segs;
    for (int c = 0; c < components; ++c) {
      const int lo = static_cast<int>(rng() % 40);
      const int len = (rng() % 3 == 0) ? 0 : static_cast<int>(rng() % 6);
      segs.emplace_back(lo, lo + len);
    }
    std::sort(segs.begin(), segs.end());
    const int log_d = static_cast<int>(rng() % 4);
    std::vector<Segment> radical;
    for (auto [lo, hi] : segs) radical.emplace_back(RadicalNumber(lo), RadicalNumber(hi));
    L.require(greedy_cover_count(radical, Rational(-log_d)) == brute_cover(segs, 1 << log_d),
              "oracle trial " + std::to_string(trial));
  }
  const std::vector<std::pair<const char*, const char*>> params{{"3/10", "1/2"}, {"1/2", "1/2"}, {"3/5", "7/10"}};
  for (int g = 0; g < 50; ++g) {
    const auto [b, gm] = params[static_cast<std::size_t>(g) % params.size()];
    const auto segs = to_segments(build_C(CParams{q(b), q(gm)}, 8 + g % 5));
    std::vector<Rational> grid;
    for (int i = 0; i < 25; ++i) grid.emplace_back(static_cast<long>(rng() % 200), 8);
    std::sort(grid.begin(), grid.end());
    Integer previous = 0;
    for (const auto& e : grid) {
      const Integer n = greedy_cover_count(segs, e);
      L.require(n >= previous, "monotone grid " + std::to_string(g));
      previous = n;
    }
  }
  L.detail << "200 oracle instances, 50 nested grids";
}

void criterion4(Line& L) {
  std::vector<Rational> grid;
  for (int e = 2; e <= 20; ++e) grid.emplace_back(e);
  const Profile p = box_profile(build_C(CParams{q("1/2"), q("1/2")}, 12), grid);
  std::vector<std::string> outside;
  for (const auto& s : p.samples) {
    const auto [lo, hi] = s.range();
    const double e = s.scale.get_d();
    L.require(s.regime == "greedy", "exact regime at " + s.label);
    if (!(lo >= 0.5 - std::log2(6.0) / e && hi <= 0.5)) outside.push_back(s.label + "=" + decimal12(hi));
  }
  L.require(outside.empty(), "estimates in [1/2 - log2(6)/e, 1/2]");
  const auto last = p.samples.back().range();
  L.require(std::abs(last.first - 0.5) <= 0.02 && std::abs(last.second - 0.5) <= 0.02, "e = 20 within 0.02");
  L.detail << "e = 20 estimate " << decimal12(last.first) << "; outside bracket: " << outside.size();
  for (const auto& o : outside) L.detail << ' ' << o;
}

void criterion5(Line& L) {
  const CParams c{q("3/10"), q("1/2")};
  int assouad = 0, mdp = 0, d_scales = 0, e_pairs = 0;
  {
    const int depth = 14;
    const SetApprox geo = build_C(c, depth);
    const auto segs = to_segments(geo);
    const Rational deepest = CModel(c).cumulative(depth);
    std::mt19937 rng(11);
    while (assouad < 500) {
      const Interval& iv = geo.intervals[rng() % geo.intervals.size()];
      const RadicalNumber x = (rng() % 2) ? iv.left : iv.right();
      const Rational eR = 2 + Rational(static_cast<long>(rng() % 60), 4);
      const Rational er = eR + 1 + Rational(static_cast<long>(rng() % 60), 4);
      if (er > deepest) continue;
      const CountResult n = ball_restricted_count(segs, x, eR, er);
      const double bound = 3 + Rational(er - eR).get_d() * c.gamma.get_d();
      L.require(log2_of(n.exact) <= bound + 1e-9, "Assouad triple " + std::to_string(assouad));
      ++assouad;
    }
  }
  {
    const MeasureModel m = MeasureModel::on_C(c);
    const CModel model(c);
    const SetApprox geo = build_C(c, 10);
    std::mt19937 rng(17);
    for (; mdp < 200; ++mdp) {
      const Interval& iv = geo.intervals[rng() % geo.intervals.size()];
      const RadicalNumber x = (rng() % 2) ? iv.left : iv.right();
      const Rational er(static_cast<long>(1 + rng() % 120), 4);
      const int depth = static_cast<int>(model.first_level_reaching(er + 2));
      L.require(mdp_ratio(x, er, c.beta, m, depth).second <= 6.0, "mdp sample " + std::to_string(mdp));
    }
    for (std::uint64_t k = 0; k <= 2; ++k) {
      const std::uint64_t n = model.nseq().term(2 * k + 1).get_ui();
      Rational floor(1);
      mpq_div_2exp(floor.get_mpq_t(), floor.get_mpq_t(), n);
      if (n <= 512) {
        const Rational er = model.cumulative(n);
        const int depth = static_cast<int>(model.first_level_reaching(er + 2));
        L.require(ball_mass(RadicalNumber(0), er, m, depth).lower >= floor, "designed radius k = " + std::to_string(k));
      } else {
        // beyond descent reach: the level-n cylinder of x lies in the ball
        const auto lower = designed_log_mass_C(n).first;
        L.require(lower.compare(Log2Value(Rational(-static_cast<long>(n)))) != std::partial_ordering::less,
                  "designed radius k = " + std::to_string(k));
      }
    }
  }
  {
    const CParams dp{q("3/5"), q("7/10")};
    const auto kseq = SequenceSpec::defaults(SequenceRole::k);
    const CModel model(dp);
    const auto segs = to_segments(build_D(dp, kseq, 12));
    for (std::uint64_t m = 1; m <= 10; ++m) {
      for (const Rational& e : {model.cumulative(m), Rational((model.cumulative(m) + model.cumulative(m + 1)) / 2)}) {
        const CountResult b = count_D_lower(dp, kseq, e);
        const Integer n = greedy_cover_count(segs, e);
        L.require(log2_of(n) + 1e-12 >= b.log2_lower.bounds().second, "D scale " + to_fraction_string(e));
        ++d_scales;
      }
    }
  }
  {
    const Rational gamma = q("4/5");
    const auto jspec = SequenceSpec::defaults(SequenceRole::j);
    const Sequence j(jspec);
    const auto segs = to_segments(build_E(gamma, jspec, 12));
    for (std::uint64_t n = 1; n <= 10; ++n, ++e_pairs) {
      const Integer jn = j.term(n);
      if (jn <= n) continue;  // bound 2^{j_n - n - 1} <= 1/2 holds trivially
      const CountResult cnt =
          ball_restricted_count(segs, RadicalNumber(0), Rational(static_cast<long>(n)) / gamma, Rational(jn) / gamma);
      L.require(cnt.exact >= (Integer(1) << static_cast<unsigned>(jn.get_ui() - n - 1)), "E pair n = " + std::to_string(n));
    }
  }
  L.detail << assouad << " Assouad triples, " << mdp << " mdp samples + 3 designed radii, " << d_scales
           << " D scales, " << e_pairs << " E pairs";
}

void within(Line& L, const char* name, const Profile& p, const Rational& target, double tol) {
  const auto [lo, hi] = p.samples.back().range();
  const double t = target.get_d();
  L.require(std::abs(lo - t) <= tol && std::abs(hi - t) <= tol, name);
  L.detail << name << " [" << decimal12(lo) << ", " << decimal12(hi) << "] ";
}

void criterion6(Line& L) {
  const Config cfg = parse_config(default_config_json());
  const auto k2 = std::pair{2, 2};
  within(L, "C-lower", designed_scale_profile(Design::CLower, cfg.dims, cfg.sequences, k2), cfg.dims.r, 0.001);
  within(L, "X-lower", designed_scale_profile(Design::XLower, cfg.dims, cfg.sequences, k2), cfg.dims.u, 0.001);
  within(L, "D-upper", designed_scale_profile(Design::DUpper, cfg.dims, cfg.sequences, k2), cfg.dims.v, 0.01);
}

void criterion7(Line& L) {
  const Config cfg = parse_config(default_config_json());
  const FParams f{cfg.dims.s, cfg.sequences.a, cfg.sequences.b};
  double min_lo = 1, min_hi = 1;
  for (TreeIndex k = 1; k < 32; ++k) {
    const auto [lo, hi] = designed_restricted_box_F(f, heap_word(k)).range();
    min_lo = std::min(min_lo, lo);
    min_hi = std::min(min_hi, hi);
  }
  const double s = cfg.dims.s.get_d();
  L.require(std::abs(min_lo - s) <= 0.1 && std::abs(min_hi - s) <= 0.1, "restricted box minimum within 0.1 of s");
  // the one designed scale inside the enumerable range: w = "0" at depth a_2 - 1 = 15
  const ProfileSample designed = designed_restricted_box_F(f, "0");
  const Profile enumerated = cylinder_restricted_box(build_F(f, 16), "0", {designed.scale});
  L.require(enumerated.samples.front().exact == designed.exact, "designed count matches enumeration for w = 0");

  const FModel model(f);
  const Profile local = designed_local_F(f, {1});  // m = f(0) = 2
  const double a2 = model.aseq().term(2).get_d(), b2 = model.bseq().term(2).get_d();
  const double bound = (a2 + std::log2(3.0)) / (b2 / s);
  const double got = local.samples.front().range().second;
  L.require(got <= bound + 1e-12, "F local at k = 2");
  L.detail << "min over |w| <= 4 in [" << decimal12(min_lo) << ", " << decimal12(min_hi) << "]; F local "
           << decimal12(got) << " <= " << decimal12(bound);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion8(Line& L) {
  const std::string dir = DIMLAB_CONFIG_DIR;
  const auto tmp = std::filesystem::temp_directory_path() / ("dimlab_acceptance_" + std::to_string(::getpid()));
  std::ostringstream sink;
  auto run = [&](std::vector<std::string> args) { return run_cli(args, sink, sink); };
  std::string first;
  for (const char* sub : {"a", "b"}) {
    std::filesystem::create_directories(tmp / sub);
    const auto out = (tmp / sub / "report.json").string();
    L.require(run({"verify-theorem", dir + "/default.json", "--out", out}) == 0, "default exits 0");
    if (first.empty()) {
      first = slurp(out);
    } else {
      L.require(slurp(out) == first, "byte-identical reports");
    }
  }
  L.require(run({"verify-theorem", dir + "/negative-control.json"}) == 1, "negative control exits 1");
  L.require(run({"verify-theorem", dir + "/all-equal.json"}) == 0, "all-equal exits 0");
  std::filesystem::remove_all(tmp);
  L.detail << "default 0, negative control 1, all-equal 0, reports identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Line&)>> criteria{
      {"1 word machinery", criterion1},        {"2 construction identities", criterion2},
      {"3 covering oracle", criterion3},        {"4 middle-halves benchmark", criterion4},
      {"5 bound harnesses", criterion5},  {"6 designed-sequence convergence", criterion6},
      {"7 F estimators", criterion7},           {"8 end-to-end", criterion8},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Line line;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(line);
    } catch (const std::exception& e) {
      line.require(false, std::string("exception ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (line.pass ? "PASS" : "FAIL") << "  criterion " << name << " (" << decimal12(secs) << " s): "
              << line.detail.str() << std::endl;
    all = all && line.pass;
  }
  return all ? 0 : 1;
}
