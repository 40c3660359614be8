#include "dimlab/params.hpp"

#include <algorithm>
#include <sstream>

namespace dimlab {

DimTuple validate_dim_tuple(const std::array<Rational, 6>& c) {
  static constexpr const char* names[6] = {"r", "s", "t", "u", "v", "w"};
  for (std::size_t i = 0; i < 6; ++i) {
    if (c[i] <= 0 || c[i] > 1) {
      throw Error(ErrorKind::OutOfRange, std::string(names[i]) + " = " + to_fraction_string(c[i]) + " is not in (0,1]");
    }
  }
  const std::pair<int, int> chain[] = {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}};
  for (auto [lo, hi] : chain) {
    if (c[lo] > c[hi]) {
      throw Error(ErrorKind::ChainViolation, std::string(names[lo]) + " ≤ " + names[hi]);
    }
  }
  return DimTuple{c[0], c[1], c[2], c[3], c[4], c[5]};
}

std::string_view to_string(SequenceRole role) {
  switch (role) {
    case SequenceRole::n: return "n";
    case SequenceRole::k: return "k";
    case SequenceRole::j: return "j";
    case SequenceRole::a: return "a";
    case SequenceRole::b: return "b";
  }
  return "?";
}

std::string_view to_string(Generator generator) {
  switch (generator) {
    case Generator::Pow2Square: return "pow2_square";
    case Generator::ShiftedPow2Square: return "shifted_pow2_square";
    case Generator::Square: return "square";
    case Generator::Pow2: return "pow2";
    case Generator::FloorRoot: return "floor_root";
    case Generator::Explicit: return "explicit";
  }
  return "?";
}

SequenceRole parse_role(std::string_view name) {
  for (auto role : {SequenceRole::n, SequenceRole::k, SequenceRole::j, SequenceRole::a, SequenceRole::b}) {
    if (to_string(role) == name) return role;
  }
  throw Error(ErrorKind::Config, "unknown sequence role '" + std::string(name) + "'");
}

Generator parse_generator(std::string_view name) {
  for (auto g : {Generator::Pow2Square, Generator::ShiftedPow2Square, Generator::Square, Generator::Pow2,
                 Generator::FloorRoot, Generator::Explicit}) {
    if (to_string(g) == name) return g;
  }
  throw Error(ErrorKind::UnsupportedGenerator, "unknown generator '" + std::string(name) + "'");
}

std::uint64_t first_index(SequenceRole role) {
  return (role == SequenceRole::k || role == SequenceRole::j) ? 1 : 0;
}

SequenceSpec SequenceSpec::defaults(SequenceRole role) {
  SequenceSpec spec;
  spec.role = role;
  switch (role) {
    case SequenceRole::n:
    case SequenceRole::a: spec.generator = Generator::Pow2Square; break;
    case SequenceRole::k: spec.generator = Generator::Square; break;
    case SequenceRole::j: spec.generator = Generator::FloorRoot; break;
    case SequenceRole::b: spec.generator = Generator::ShiftedPow2Square; break;
  }
  return spec;
}

// ---------------------------------------------------------------------------

namespace {

// sign of n*ln(m) - (n+1)*ln(n), which is never zero for n >= 2
int compare_power(std::uint64_t n, const Integer& m) {
  for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
    BigFloat lm_lo(prec), lm_hi(prec), ln_lo(prec), ln_hi(prec);
    mpfr_set_z(lm_lo.get(), m.get_mpz_t(), MPFR_RNDN);
    mpfr_set(lm_hi.get(), lm_lo.get(), MPFR_RNDN);
    mpfr_log(lm_lo.get(), lm_lo.get(), MPFR_RNDD);
    mpfr_log(lm_hi.get(), lm_hi.get(), MPFR_RNDU);
    mpfr_set_ui(ln_lo.get(), n, MPFR_RNDN);
    mpfr_set_ui(ln_hi.get(), n, MPFR_RNDN);
    mpfr_log(ln_lo.get(), ln_lo.get(), MPFR_RNDD);
    mpfr_log(ln_hi.get(), ln_hi.get(), MPFR_RNDU);
    mpfr_mul_ui(lm_lo.get(), lm_lo.get(), n, MPFR_RNDD);
    mpfr_mul_ui(lm_hi.get(), lm_hi.get(), n, MPFR_RNDU);
    mpfr_mul_ui(ln_lo.get(), ln_lo.get(), n + 1, MPFR_RNDD);
    mpfr_mul_ui(ln_hi.get(), ln_hi.get(), n + 1, MPFR_RNDU);
    if (mpfr_less_p(lm_hi.get(), ln_lo.get())) return -1;
    if (mpfr_greater_p(lm_lo.get(), ln_hi.get())) return 1;
  }
  throw Error(ErrorKind::PrecisionBudgetExceeded, "floor_root comparison did not separate");
}

}  // namespace

Integer floor_root_term(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::OutOfRange, "floor_root is defined for n >= 1");
  if (n <= 256) {
    Integer power, root;
    mpz_ui_pow_ui(power.get_mpz_t(), n, n + 1);
    mpz_root(root.get_mpz_t(), power.get_mpz_t(), n);
    return root;
  }
  BigFloat x(128);
  mpfr_set_ui(x.get(), n, MPFR_RNDN);
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  mpfr_mul_ui(x.get(), x.get(), n + 1, MPFR_RNDN);
  mpfr_div_ui(x.get(), x.get(), n, MPFR_RNDN);
  mpfr_exp(x.get(), x.get(), MPFR_RNDN);
  Integer m;
  mpfr_get_z(m.get_mpz_t(), x.get(), MPFR_RNDD);
  // m is the answer iff m^n < n^{n+1} < (m+1)^n
  while (compare_power(n, m) > 0) --m;
  while (compare_power(n, Integer(m + 1)) < 0) ++m;
  return m;
}

Sequence::Sequence(SequenceSpec spec) : spec_(std::move(spec)), first_(dimlab::first_index(spec_.role)) {
  if (spec_.generator == Generator::Explicit && spec_.terms.empty()) {
    throw Error(ErrorKind::Config, "explicit sequence with no terms");
  }
}

std::optional<std::uint64_t> Sequence::horizon() const {
  if (spec_.generator != Generator::Explicit) return std::nullopt;
  return first_ + spec_.terms.size();
}

Integer Sequence::term(std::uint64_t index) const {
  if (index < first_) {
    throw Error(ErrorKind::OutOfRange, "index " + std::to_string(index) + " precedes the first index of role " +
                                           std::string(to_string(spec_.role)));
  }
  Integer out;
  switch (spec_.generator) {
    case Generator::Pow2Square:
      mpz_ui_pow_ui(out.get_mpz_t(), 2, index * index);
      return out;
    case Generator::ShiftedPow2Square:
      mpz_ui_pow_ui(out.get_mpz_t(), 2, index * index);
      return out * (index + 1);
    case Generator::Square: {
      Integer i(static_cast<unsigned long>(index));
      return i * i;
    }
    case Generator::Pow2:
      mpz_ui_pow_ui(out.get_mpz_t(), 2, index);
      return out;
    case Generator::FloorRoot:
      return floor_root_term(index);
    case Generator::Explicit:
      if (index - first_ >= spec_.terms.size()) {
        throw Error(ErrorKind::SequenceHorizonExceeded,
                    "role " + std::string(to_string(spec_.role)) + " has no term at index " + std::to_string(index));
      }
      return spec_.terms[index - first_];
  }
  throw Error(ErrorKind::UnsupportedGenerator, "unhandled generator");
}

std::optional<Integer> Sequence::term_if_at_most(std::uint64_t index, const Integer& limit) const {
  if (limit < 1) return std::nullopt;
  const std::uint64_t bits = mpz_sizeinbase(limit.get_mpz_t(), 2);
  switch (spec_.generator) {
    case Generator::Pow2Square:
    case Generator::ShiftedPow2Square:
      if (index > 0 && index >= bits / index + 1) return std::nullopt;  // index^2 > bits
      break;
    case Generator::Pow2:
      if (index >= bits) return std::nullopt;
      break;
    default:
      break;
  }
  Integer value = term(index);
  if (value > limit) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> Sequence::last_index_at_most(const Integer& bound) const {
  auto fits = [&](std::uint64_t index) { return term_if_at_most(index, bound).has_value(); };
  const auto end = horizon();
  if (!fits(first_)) return std::nullopt;
  std::uint64_t good = first_;
  std::uint64_t step = 1;
  std::uint64_t bad = 0;
  for (;;) {
    std::uint64_t probe = good + step;
    if (end && probe >= *end) {
      probe = *end - 1;
      if (fits(probe)) {
        throw Error(ErrorKind::SequenceHorizonExceeded,
                    "explicit role " + std::string(to_string(spec_.role)) + " ends before exceeding the bound");
      }
    }
    if (!fits(probe)) {
      bad = probe;
      break;
    }
    good = probe;
    step *= 2;
  }
  while (bad - good > 1) {
    const std::uint64_t mid = good + (bad - good) / 2;
    if (fits(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

std::optional<std::uint64_t> Sequence::last_index_below(const Integer& bound) const {
  return last_index_at_most(Integer(bound - 1));
}

std::vector<Integer> gen_sequence(const SequenceSpec& spec, std::size_t count) {
  Sequence seq(spec);
  std::vector<Integer> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(seq.term(seq.first_index() + i));
  return out;
}

// ---------------------------------------------------------------------------

bool ValidationReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

namespace {

double ratio_double(const Rational& q) { return q.get_d(); }

// Ratios must strictly decrease along the prefix; `worst` is the largest
// consecutive factor ratio_{i+1}/ratio_i, so anything >= 1 means no decay.
ConditionResult trend(const std::string& name, std::vector<Rational> ratios) {
  ConditionResult out{name, true, 0, ""};
  for (auto& q : ratios) q.canonicalize();
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
    const Rational factor = ratios[i + 1] / ratios[i];
    out.worst = std::max(out.worst, ratio_double(factor));
    if (factor >= 1) out.pass = false;
  }
  std::ostringstream detail;
  detail << "last ratio " << (ratios.empty() ? 0.0 : ratio_double(ratios.back()));
  if (!out.pass) detail << "; ratio does not decay along the prefix (non-vanishing)";
  out.detail = detail.str();
  return out;
}

}  // namespace

ValidationReport validate_sequences(const SequenceSet& seqs, std::uint64_t horizon) {
  ValidationReport report;
  if (horizon < 2) throw Error(ErrorKind::Config, "validation horizon must be at least 2");

  struct Prefix {
    std::string role;
    std::vector<Integer> terms;
    bool strict;
    std::string error;
  };
  auto take = [&](const SequenceSpec& spec, bool strict) {
    Prefix p{std::string(to_string(spec.role)), {}, strict, ""};
    try {
      Sequence seq(spec);
      const std::uint64_t first = seq.first_index();
      for (std::uint64_t i = first; i <= horizon; ++i) p.terms.push_back(seq.term(i));
    } catch (const Error& e) {
      p.error = e.what();
    }
    return p;
  };
  const Prefix n = take(seqs.n, true), k = take(seqs.k, true), j = take(seqs.j, false), a = take(seqs.a, true),
               b = take(seqs.b, true);

  for (const Prefix* p : {&n, &k, &j, &a, &b}) {
    ConditionResult c{p->role + (p->strict ? " strictly increasing positive" : " nondecreasing positive"), true, 0, ""};
    if (!p->error.empty()) {
      c.pass = false;
      c.detail = p->error;
    } else {
      for (std::size_t i = 0; i < p->terms.size(); ++i) {
        if (p->terms[i] < 1) {
          c.pass = false;
          c.detail = "non-positive term";
        }
        if (i > 0 && (p->strict ? p->terms[i] <= p->terms[i - 1] : p->terms[i] < p->terms[i - 1])) {
          c.pass = false;
          c.detail = "monotonicity fails at position " + std::to_string(i);
        }
      }
    }
    report.conditions.push_back(c);
  }
  if (!n.error.empty() || !k.error.empty() || !a.error.empty() || !b.error.empty()) return report;

  {
    ConditionResult c{"a_0 = b_0 = 1", a.terms[0] == 1 && b.terms[0] == 1, 0, ""};
    c.detail = "a_0 = " + a.terms[0].get_str() + ", b_0 = " + b.terms[0].get_str();
    report.conditions.push_back(c);
  }
  {
    ConditionResult c{"a_j - a_i <= b_j - b_i", true, 0, ""};
    Integer worst = 0;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      for (std::size_t jj = i; jj < a.terms.size(); ++jj) {
        Integer excess = (a.terms[jj] - a.terms[i]) - (b.terms[jj] - b.terms[i]);
        if (excess > worst) worst = excess;
      }
    }
    c.pass = worst <= 0;
    c.worst = worst.get_d();
    c.detail = c.pass ? "holds on the prefix" : "largest excess " + worst.get_str();
    report.conditions.push_back(c);
  }

  std::vector<Rational> r;
  for (std::size_t i = 0; i + 1 < n.terms.size(); ++i) r.emplace_back(n.terms[i], n.terms[i + 1]);
  report.conditions.push_back(trend("n_k/n_{k+1} -> 0", r));
  r.clear();
  for (std::size_t i = 0; i < k.terms.size(); ++i) r.emplace_back(Integer(static_cast<unsigned long>(i + 1)), k.terms[i]);
  report.conditions.push_back(trend("n/k_n -> 0", r));
  r.clear();
  for (std::size_t i = 0; i < a.terms.size(); ++i) r.emplace_back(a.terms[i], b.terms[i]);
  report.conditions.push_back(trend("a_k/b_k -> 0", r));
  r.clear();
  for (std::size_t i = 0; i + 1 < a.terms.size(); ++i) r.emplace_back(b.terms[i], a.terms[i + 1]);
  report.conditions.push_back(trend("b_k/a_{k+1} -> 0", r));
  return report;
}

}  // namespace dimlab
