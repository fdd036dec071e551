#pragma once

// JSON config parsing and deterministic JSON/CSV emission. Floating-point
// values are always printed with 17 significant digits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vfock/classifier.hpp"
#include "vfock/entire.hpp"
#include "vfock/weight.hpp"

namespace vfock {

using Json = nlohmann::json;

/// {"family": "exp_power", "alpha": 1.0, "p": 2.0}; families exp_power,
/// exp_power_log (alpha, p, beta, q), log_power (p), hardy (a, b, c, d, k, m);
/// optional "patch_radius". Missing/mistyped fields throw ConfigError naming
/// the field; out-of-range values throw ParameterError.
RadialWeight parse_weight(const Json& j, const std::string& field = "weight");
Json weight_to_json(const RadialWeight& w);

struct SymbolSpec {
  TaylorPolynomial poly;
  bool is_polynomial = true;  // false for truncated series such as "exp"
};

/// {"coeffs": [[re, im], ...]} or {"named": "exp", "scale": s, "truncation": N}.
SymbolSpec parse_symbol(const Json& j, std::size_t default_truncation, const std::string& field = "symbol");

struct GridSpec {
  double r_min = 1.0;
  double r_max = 50.0;
  std::size_t points = 64;
};

struct RunConfig {
  std::optional<Json> source_weight;
  std::optional<Json> target_weight;
  std::optional<Json> symbol;
  GridSpec grid;
  bool grid_given = false;
  std::size_t truncation = 128;
  ClassifyOptions tolerances;
  std::string output_dir = ".";
  std::uint64_t seed = 42;
  std::size_t sample_count = 100;
  std::string op = "volterra";
  std::vector<std::string> checks;
};

/// Validates r_min < r_max, points >= 16, truncation >= 1.
RunConfig parse_run_config(const Json& j);

std::string format_double(double x);
/// Serializes with every number printed by format_double; non-finite -> null.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const ConditionReport& rep);
Json to_json(const Classification& c);
std::string curve_csv(const CriterionCurve& curve);

}  // namespace vfock
