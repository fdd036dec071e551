#pragma once

// The CLI subcommands as pure functions: config in, artifacts + exit code out.
// Nothing here touches the filesystem.

#include <cstdint>
#include <string>
#include <vector>

#include "vfock/entire.hpp"
#include "vfock/io.hpp"

namespace vfock {

// Exit-code contract shared by the C API and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitHypothesis = 4;
inline constexpr int kExitCoverage = 5;
inline constexpr int kExitOracleDisagreement = 6;
inline constexpr int kExitInternal = 7;

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<Artifact> artifacts;
  std::string message;
};

/// One ConditionReport JSON per (weight, check). Checks: axioms, kp,
/// two_weight, essentialness (all by default). Exit 0 iff all pass.
RunResult cmd_weight_check(const Json& config);

/// op is "volterra" or "mult". Writes classification.json and curve.csv.
RunResult cmd_classify(const Json& config, const std::string& op);

/// Verdict matrix (rows p, columns deg 0..max_deg) from the numeric pipeline
/// with an oracle-agreement column. `config` may carry grid/tolerances.
RunResult cmd_corollary_table(double alpha, const std::vector<double>& p_list, int max_deg,
                              const Json& config = Json::object());

/// Littlewood-Paley ratio pairs for probe functions (1, z) and seeded random
/// polynomials, plus the envelope constant.
RunResult cmd_lp_check(const Json& config);

/// Coefficients uniform in the complex unit disc, degrees uniform in
/// [1, max_degree]. Bit-reproducible for a given seed on every platform.
std::vector<TaylorPolynomial> random_polynomials(std::uint64_t seed, std::size_t count,
                                                 int max_degree = 20);

}  // namespace vfock
