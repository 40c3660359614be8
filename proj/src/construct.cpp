#include "dimlab/construct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace dimlab {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::X: return "X";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (auto f : {Family::C, Family::D, Family::E, Family::F, Family::X}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorKind::Config, "unknown set family '" + std::string(name) + "'");
}

std::string_view to_string(StarSemantics semantics) {
  return semantics == StarSemantics::Skeleton ? "skeleton" : "level_identity";
}

StarSemantics parse_star_semantics(std::string_view name) {
  if (name == "skeleton") return StarSemantics::Skeleton;
  if (name == "level_identity") return StarSemantics::LevelIdentity;
  throw Error(ErrorKind::Config, "unknown star semantics '" + std::string(name) + "'");
}

std::size_t SetApprox::cardinality() const {
  std::size_t total = intervals.size() + points.size();
  for (const auto& part : parts) total += part.cardinality();
  return total;
}

std::uint64_t field_order(std::initializer_list<Rational> exponents) {
  std::uint64_t order = 1;
  for (Rational e : exponents) {
    e.canonicalize();
    order = std::lcm(order, e.get_den().get_ui());
  }
  return order;
}

std::vector<std::size_t> exact_order(const std::vector<RadicalNumber>& values) {
  std::vector<std::pair<double, double>> boxes;
  boxes.reserve(values.size());
  for (const auto& v : values) boxes.push_back(v.enclose(128).to_doubles());
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (boxes[i].second < boxes[j].first) return true;
    if (boxes[j].second < boxes[i].first) return false;
    return values[i] < values[j];
  });
  return order;
}

namespace {

std::string describe(const SequenceSpec& spec) {
  if (spec.generator != Generator::Explicit) return std::string(to_string(spec.generator));
  std::string out = "explicit:";
  for (std::size_t i = 0; i < spec.terms.size(); ++i) out += (i ? "," : "") + spec.terms[i].get_str();
  return out;
}

void check_depth(int depth, int cap) {
  if (depth < 0) throw Error(ErrorKind::OutOfRange, "negative depth");
  if (depth > cap) {
    throw Error(ErrorKind::EnumerationCapExceeded,
                "depth " + std::to_string(depth) + " exceeds the enumeration cap " + std::to_string(cap));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// C

CModel::CModel(CParams params) : params_(std::move(params)), nseq_(params_.nseq) {
  if (params_.beta <= 0 || params_.gamma > 1 || params_.beta > params_.gamma) {
    throw Error(ErrorKind::OutOfRange, "C needs 0 < beta <= gamma <= 1");
  }
}

Rational CModel::exponent(std::uint64_t level) const {
  if (level == 0) throw Error(ErrorKind::OutOfRange, "contraction levels start at 1");
  const auto idx = nseq_.last_index_at_most(Integer(level));
  if (!idx) return 1 / params_.gamma;
  return (*idx % 2 == 0) ? Rational(1 / params_.beta) : Rational(1 / params_.gamma);
}

Rational CModel::cumulative(std::uint64_t level) const {
  const Integer top(level);
  Integer beta_levels = 0;
  for (std::uint64_t idx = 0;; idx += 2) {
    const auto lo = nseq_.term_if_at_most(idx, top);
    if (!lo) break;
    const auto hi = nseq_.term_if_at_most(idx + 1, top);
    if (!hi) {
      beta_levels += top - *lo + 1;
      break;
    }
    beta_levels += *hi - *lo;
  }
  Rational out = Rational(beta_levels) / params_.beta + Rational(top - beta_levels) / params_.gamma;
  out.canonicalize();
  return out;
}

std::uint64_t CModel::first_level_reaching(const Rational& e) const {
  if (e <= 0) return 0;
  std::uint64_t hi = 1;
  while (cumulative(hi) < e) hi *= 2;
  std::uint64_t lo = hi / 2;  // cumulative(lo) < e, or lo == 0
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (cumulative(mid) >= e) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

RadicalNumber CModel::left(std::string_view w) const {
  RadicalNumber x;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    if (w[i - 1] == '1') x += length(i - 1) - length(i);
  }
  return x;
}

Interval CModel::cylinder(std::string_view w) const {
  if (!is_binary_word(w)) throw Error(ErrorKind::Parse, "cylinder address must be binary");
  return Interval{Word(w), cumulative(w.size()), left(w)};
}

Rational contraction_ratio(std::uint64_t level, const CParams& p) { return CModel(p).exponent(level); }

Interval cylinder_interval(std::string_view w, const CParams& p) { return CModel(p).cylinder(w); }

SetApprox build_C(const CParams& p, int depth, bool enumerate) {
  CModel model(p);
  SetApprox out;
  out.family = Family::C;
  out.depth = depth;
  out.params = {{"beta", to_fraction_string(p.beta)}, {"gamma", to_fraction_string(p.gamma)}, {"n", describe(p.nseq)}};
  if (!enumerate) {
    out.implicit = true;
    return out;
  }
  check_depth(depth, kIntervalDepthCap);

  std::vector<RadicalNumber> step(static_cast<std::size_t>(depth) + 1);  // l_{i-1} - l_i
  RadicalNumber previous = model.length(0);
  for (int i = 1; i <= depth; ++i) {
    RadicalNumber current = model.length(static_cast<std::uint64_t>(i));
    step[static_cast<std::size_t>(i)] = previous - current;
    previous = current;
  }
  const Rational log_length = model.cumulative(static_cast<std::uint64_t>(depth));
  out.intervals.reserve(std::size_t{1} << depth);
  Word w;
  std::function<void(const RadicalNumber&)> rec = [&](const RadicalNumber& left) {
    if (static_cast<int>(w.size()) == depth) {
      out.intervals.push_back(Interval{w, log_length, left});
      return;
    }
    const std::size_t i = w.size() + 1;
    w.push_back('0');
    rec(left);
    w.back() = '1';
    rec(left + step[i]);
    w.pop_back();
  };
  rec(RadicalNumber());
  return out;
}

// ---------------------------------------------------------------------------
// D and E

namespace {

void keep_minimal(std::map<std::string, PointAtom>& seen, PointAtom atom, std::uint64_t order) {
  std::string key = atom.coordinate.canonical_key(order);
  auto it = seen.find(key);
  if (it == seen.end()) {
    seen.emplace(std::move(key), std::move(atom));
    return;
  }
  PointAtom& kept = it->second;
  const auto rank = [](const PointAtom& a) { return std::make_tuple(a.level, a.word.size(), a.word, a.endpoint); };
  if (rank(atom) < rank(kept)) kept = std::move(atom);
}

std::vector<PointAtom> sorted_points(std::map<std::string, PointAtom>& seen) {
  std::vector<RadicalNumber> coords;
  std::vector<PointAtom> atoms;
  for (auto& [key, atom] : seen) {
    coords.push_back(atom.coordinate);
    atoms.push_back(std::move(atom));
  }
  std::vector<PointAtom> out;
  out.reserve(atoms.size());
  for (std::size_t i : exact_order(coords)) out.push_back(std::move(atoms[i]));
  return out;
}

}  // namespace

SetApprox build_D(const CParams& p, const SequenceSpec& kseq_spec, int max_level, StarSemantics semantics) {
  check_depth(max_level, kOmegaCap);
  CModel model(p);
  Sequence kseq(kseq_spec);
  const std::uint64_t order = field_order({1 / p.beta, 1 / p.gamma});

  std::vector<Rational> exps(static_cast<std::size_t>(max_level) + 1);
  std::vector<RadicalNumber> lengths(static_cast<std::size_t>(max_level) + 1);
  for (int i = 0; i <= max_level; ++i) {
    const auto level = static_cast<std::size_t>(i);
    if (i > 0) exps[level] = model.exponent(level);
    lengths[level] = model.length(level);
  }

  std::map<std::string, PointAtom> seen;
  for (int n = 0; n <= max_level; ++n) {
    if (semantics == StarSemantics::Skeleton) {
      for (const Word& v : omega_skeletons(n, kseq)) {
        RadicalNumber left;
        for (std::size_t i = 1; i <= v.size(); ++i) {
          if (v[i - 1] == '1') left += lengths[i - 1] - lengths[i];
        }
        keep_minimal(seen, PointAtom{v, 0, n, left}, order);
        keep_minimal(seen, PointAtom{v, 1, n, left + lengths[v.size()]}, order);
      }
    } else {
      omega_visit(n, kseq, [&](const Word& w) {
        RadicalNumber left;
        Rational scale = 0;
        for (std::size_t i = 1; i <= w.size(); ++i) {
          const char letter = w[i - 1];
          if (letter == kStar) continue;
          if (letter == '1') left += RadicalNumber::pow2(scale) - RadicalNumber::pow2(scale + exps[i]);
          scale += exps[i];
        }
        keep_minimal(seen, PointAtom{w, 0, n, left}, order);
        keep_minimal(seen, PointAtom{w, 1, n, left + RadicalNumber::pow2(scale)}, order);
      });
    }
  }

  SetApprox out;
  out.family = Family::D;
  out.depth = max_level;
  out.params = {{"beta", to_fraction_string(p.beta)},
                {"gamma", to_fraction_string(p.gamma)},
                {"n", describe(p.nseq)},
                {"k", describe(kseq_spec)},
                {"stars", std::string(to_string(semantics))}};
  out.points = sorted_points(seen);
  return out;
}

SetApprox build_E(const Rational& gamma, const SequenceSpec& jseq, int max_level, StarSemantics semantics) {
  SetApprox out = build_D(CParams{gamma, gamma, SequenceSpec::defaults(SequenceRole::n)}, jseq, max_level, semantics);
  out.family = Family::E;
  out.params = {{"gamma", to_fraction_string(gamma)}, {"j", describe(jseq)}, {"stars", std::string(to_string(semantics))}};
  return out;
}

// ---------------------------------------------------------------------------
// F

FModel::FModel(FParams params) : params_(std::move(params)), aseq_(params_.aseq), bseq_(params_.bseq) {
  if (params_.gamma <= 0 || params_.gamma > 1) throw Error(ErrorKind::OutOfRange, "F needs 0 < gamma <= 1");
}

std::optional<TreeIndex> FModel::reset_prefix(std::string_view w) const {
  const Integer n(static_cast<unsigned long>(w.size()));
  std::optional<TreeIndex> found;
  for (std::size_t m = 0; m < w.size(); ++m) {
    const TreeIndex idx = heap_index(w.substr(0, m));
    const auto a = aseq_.term_if_at_most(idx, n);
    if (a && *a == n) {
      if (found) {
        throw Error(ErrorKind::AmbiguousLengthRule,
                    "two prefixes of '" + std::string(w) + "' select the length of level " + n.get_str());
      }
      found = idx;
    }
  }
  return found;
}

Integer FModel::exponent_units(std::string_view w) const {
  Integer x = 0;
  for (std::size_t n = 1; n <= w.size(); ++n) {
    if (auto idx = reset_prefix(w.substr(0, n))) {
      x = bseq_.term(*idx);
    } else {
      x += 1;
    }
  }
  return x;
}

Integer FModel::path_exponent_units(std::string_view u, const Integer& depth) const {
  if (depth <= Integer(static_cast<unsigned long>(u.size()))) {
    return exponent_units(u.substr(0, depth.get_ui()));
  }
  // Level A resets the length iff A = a_{f(prefix_m)} for some m < A. Along
  // u followed by zeros the prefix indices are increasing in m, so only
  // finitely many prefixes have a term within the depth.
  std::optional<Integer> last_level;
  TreeIndex last_index = 0;
  bool tied = false;
  TreeIndex f = 1;
  for (std::uint64_t m = 0;; ++m) {
    if (m > 0) {
      if (f >= (TreeIndex{1} << 62)) throw Error(ErrorKind::OutOfRange, "prefix index overflow");
      f = 2 * f + (m <= u.size() ? static_cast<TreeIndex>(u[m - 1] - '0') : 0);
    }
    const auto a = aseq_.term_if_at_most(f, depth);
    if (!a) break;
    if (*a <= Integer(static_cast<unsigned long>(m))) continue;
    if (!last_level || *a > *last_level) {
      last_level = *a;
      last_index = f;
      tied = false;
    } else if (*a == *last_level) {
      tied = true;
    }
  }
  if (tied) throw Error(ErrorKind::AmbiguousLengthRule, "two prefixes reset the same level");
  if (!last_level) return depth;
  return bseq_.term(last_index) + (depth - *last_level);
}

Integer FModel::component_units(TreeIndex k) const {
  const TreeIndex p = parent_index(k);
  return aseq_.term(k) - 1 - aseq_.term(p) + bseq_.term(p);
}

Rational component_length_exponent_F(TreeIndex k, const FParams& p) {
  FModel model(p);
  return model.units_to_exponent(model.component_units(k));
}

SetApprox build_F(const FParams& p, int depth) {
  check_depth(depth, kIntervalDepthCap);
  FModel model(p);
  SetApprox out;
  out.family = Family::F;
  out.depth = depth;
  out.params = {{"gamma", to_fraction_string(p.gamma)}, {"a", describe(p.aseq)}, {"b", describe(p.bseq)}};
  out.intervals.reserve(std::size_t{1} << depth);

  Word w;
  std::function<void(const Integer&, const RadicalNumber&)> rec = [&](const Integer& x, const RadicalNumber& left) {
    const Rational e = model.units_to_exponent(x);
    if (static_cast<int>(w.size()) == depth) {
      out.intervals.push_back(Interval{w, e, left});
      return;
    }
    const RadicalNumber parent_length = RadicalNumber::pow2(e);
    for (char letter : {'0', '1'}) {
      w.push_back(letter);
      const auto idx = model.reset_prefix(w);
      const Integer child = idx ? model.bseq().term(*idx) : Integer(x + 1);
      if (letter == '0') {
        rec(child, left);
      } else {
        rec(child, left + parent_length - RadicalNumber::pow2(model.units_to_exponent(child)));
      }
      w.pop_back();
    }
  };
  rec(Integer(0), RadicalNumber());
  return out;
}

// ---------------------------------------------------------------------------
// X

SetApprox build_X(const DimTuple& dims, const SequenceSet& seqs, const Depths& depths, StarSemantics semantics) {
  SetApprox out;
  out.family = Family::X;
  out.depth = std::max({depths.c, depths.d, depths.e, depths.f});
  const auto d = dims.as_array();
  static constexpr const char* names[6] = {"r", "s", "t", "u", "v", "w"};
  for (int i = 0; i < 6; ++i) out.params.emplace_back(names[i], to_fraction_string(d[static_cast<std::size_t>(i)]));
  out.parts.push_back(build_C(CParams{dims.r, dims.t, seqs.n}, depths.c));
  out.parts.push_back(build_D(CParams{dims.u, dims.v, seqs.n}, seqs.k, depths.d, semantics));
  out.parts.push_back(build_E(dims.w, seqs.j, depths.e, semantics));
  out.parts.push_back(build_F(FParams{dims.s, seqs.a, seqs.b}, depths.f));
  return out;
}

}  // namespace dimlab
