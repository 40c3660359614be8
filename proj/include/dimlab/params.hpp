#pragma once

// Dimension tuples and the integer sequences n, k, j, a, b.

#include "dimlab/exact.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dimlab {

struct DimTuple {
  Rational r, s, t, u, v, w;

  std::array<Rational, 6> as_array() const { return {r, s, t, u, v, w}; }
};

/// Accepts six rationals in (0,1] satisfying r <= s <= min(t,u),
/// max(t,u) <= v <= w. Throws OutOfRange or ChainViolation naming the first
/// failing component or inequality.
DimTuple validate_dim_tuple(const std::array<Rational, 6>& candidate);

enum class SequenceRole { n, k, j, a, b };

enum class Generator {
  Pow2Square,         // 2^{i^2}
  ShiftedPow2Square,  // (i+1) 2^{i^2}
  Square,             // i^2
  Pow2,               // 2^i
  FloorRoot,          // floor(i^{1+1/i})
  Explicit,
};

std::string_view to_string(SequenceRole role);
std::string_view to_string(Generator generator);
SequenceRole parse_role(std::string_view name);
Generator parse_generator(std::string_view name);

/// Roles n, a, b are indexed from 0; roles k and j from 1.
std::uint64_t first_index(SequenceRole role);

struct SequenceSpec {
  SequenceRole role = SequenceRole::n;
  Generator generator = Generator::Pow2Square;
  std::vector<Integer> terms;  // Explicit only; terms[0] sits at first_index(role)

  static SequenceSpec defaults(SequenceRole role);
};

class Sequence {
 public:
  explicit Sequence(SequenceSpec spec);

  const SequenceSpec& spec() const { return spec_; }
  std::uint64_t first_index() const { return first_; }

  Integer term(std::uint64_t index) const;
  /// The term if it does not exceed `limit`; never materializes larger terms.
  std::optional<Integer> term_if_at_most(std::uint64_t index, const Integer& limit) const;

  /// Largest index whose term is <= bound, or nullopt if even the first is larger.
  std::optional<std::uint64_t> last_index_at_most(const Integer& bound) const;
  /// Largest index whose term is < bound.
  std::optional<std::uint64_t> last_index_below(const Integer& bound) const;

  /// Exclusive end of the available index range (explicit lists only).
  std::optional<std::uint64_t> horizon() const;

 private:
  SequenceSpec spec_;
  std::uint64_t first_;
};

/// First `count` terms, starting at the role's first index.
std::vector<Integer> gen_sequence(const SequenceSpec& spec, std::size_t count);

/// floor(n^{1+1/n}) by exact integer comparison (certified logarithms for
/// very large n, where n^{n+1} is out of reach).
Integer floor_root_term(std::uint64_t n);

struct SequenceSet {
  SequenceSpec n = SequenceSpec::defaults(SequenceRole::n);
  SequenceSpec k = SequenceSpec::defaults(SequenceRole::k);
  SequenceSpec j = SequenceSpec::defaults(SequenceRole::j);
  SequenceSpec a = SequenceSpec::defaults(SequenceRole::a);
  SequenceSpec b = SequenceSpec::defaults(SequenceRole::b);
};

struct ConditionResult {
  std::string name;
  bool pass = false;
  double worst = 0;  // worst observed ratio; meaning depends on the condition
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;

  bool all_pass() const;
};

/// Finite-prefix checks of monotonicity, a_0 = b_0 = 1, the pairwise a/b
/// increment condition and the decay trends of the four ratio conditions.
ValidationReport validate_sequences(const SequenceSet& seqs, std::uint64_t horizon);

}  // namespace dimlab
