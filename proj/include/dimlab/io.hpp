#pragma once

// Configuration loading, the JSON document for SetApprox and reports, and
// CSV rendering of counts and profiles. All numbers in configs are exact
// strings such as "3/10".

#include "dimlab/dims.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dimlab {

inline constexpr const char* kSchema = "dimlab/1";

struct Config {
  DimTuple dims;
  SequenceSet sequences;
  long precision_bits = 256;
  Depths depths{12, 10, 12, 12};
  std::vector<Rational> box_grid;                          // default e = 1..20
  std::vector<std::pair<Rational, Rational>> pair_grid;    // (eR, er)
  Budgets budgets;
  StarSemantics stars = StarSemantics::Skeleton;
  std::uint64_t seed = 1;
  std::uint64_t horizon = 32;
};

/// Parses and validates a config document; throws Error(Config) on any
/// structural problem. DIMLAB_PRECISION_BITS overrides precisionBits.
Config parse_config(const nlohmann::ordered_json& doc);
Config load_config(const std::string& path);

/// The document written for a default run.
nlohmann::ordered_json default_config_json();

/// value ~ mantissa * 2^exponent with |error| < 2^errorRadiusExponent
/// (null when exact). Precision grows until the radius is below 2^-target.
nlohmann::ordered_json position_json(const RadicalNumber& value, long precision_bits, long target_bits);

nlohmann::ordered_json to_json(const SetApprox& set, long precision_bits);
nlohmann::ordered_json to_json(const TheoremReport& report);

/// Decimal with 12 significant digits.
std::string decimal12(double value);

std::string count_csv_header();
std::string count_csv_row(const Rational& e, const CountResult& c);
std::string profile_csv(const Profile& profile);

/// Writes text to a file, throwing Error(Config) if it cannot.
void write_file(const std::string& path, const std::string& text);

}  // namespace dimlab
