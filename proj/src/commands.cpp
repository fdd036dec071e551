#include "vfock/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "vfock/classifier.hpp"
#include "vfock/errors.hpp"
#include "vfock/numeric.hpp"
#include "vfock/weight.hpp"

namespace vfock {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config:
    case ErrorKind::Parameter:
    case ErrorKind::UnsupportedFamily: return kExitBadConfig;
    case ErrorKind::Inconclusive: return kExitInconclusive;
    case ErrorKind::Precondition: return kExitHypothesis;
    case ErrorKind::DomainCoverage: return kExitCoverage;
    case ErrorKind::Consistency:
    case ErrorKind::PartialOracle: return kExitOracleDisagreement;
  }
  return kExitInternal;
}

template <class Body>
RunResult guarded(Body&& body) {
  try {
    return body();
  } catch (const InconclusiveError& e) {
    RunResult r;
    r.exit_code = kExitInconclusive;
    r.message = std::string("inconclusive: ") + e.what();
    r.artifacts.push_back({"curve.csv", curve_csv(e.curve)});
    return r;
  } catch (const PreconditionError& e) {
    return {kExitHypothesis, {}, "hypothesis failed [" + e.condition + "]: " + e.what()};
  } catch (const Error& e) {
    return {exit_code_for(e), {}, std::string(to_string(e.kind())) + ": " + e.what()};
  } catch (const nlohmann::json::exception& e) {
    return {kExitBadConfig, {}, std::string("config: ") + e.what()};
  } catch (const std::exception& e) {
    return {kExitInternal, {}, std::string("internal error: ") + e.what()};
  }
}

VolterraOptions options_from(const RunConfig& c) {
  VolterraOptions o;
  o.classify = c.tolerances;
  if (c.grid_given) o.r_min = c.grid.r_min;
  o.r_max = c.grid.r_max;
  o.grid_points = c.grid.points;
  return o;
}

std::uint64_t next_u64(std::mt19937_64& rng) { return rng(); }
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(next_u64(rng) >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<TaylorPolynomial> random_polynomials(std::uint64_t seed, std::size_t count, int max_degree) {
  std::mt19937_64 rng(seed);
  std::vector<TaylorPolynomial> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int deg = 1 + static_cast<int>(next_u64(rng) % static_cast<std::uint64_t>(max_degree));
    std::vector<Complex> c(static_cast<std::size_t>(deg) + 1);
    for (auto& z : c) {
      double x = 0.0;
      double y = 0.0;
      do {
        x = 2.0 * next_unit(rng) - 1.0;
        y = 2.0 * next_unit(rng) - 1.0;
      } while (x * x + y * y >= 1.0);
      z = {x, y};
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

RunResult cmd_weight_check(const Json& config) {
  return guarded([&]() -> RunResult {
    const RunConfig c = parse_run_config(config);
    std::vector<std::pair<std::string, RadialWeight>> weights;
    if (c.source_weight) weights.emplace_back("source", parse_weight(*c.source_weight, "source_weight"));
    if (c.target_weight) weights.emplace_back("target", parse_weight(*c.target_weight, "target_weight"));
    if (weights.empty()) throw ConfigError("weight: missing (give 'weight', 'source_weight' or 'target_weight')");
    double delta = 0.5;
    if (config.contains("delta")) {
      if (!config.at("delta").is_number()) throw ConfigError("delta: expected a number");
      delta = config.at("delta").get<double>();
      if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta: must satisfy 0 < delta <= 1");
    }
    std::vector<std::string> checks = c.checks;
    if (checks.empty()) checks = {"axioms", "kp", "two_weight", "essentialness"};
    for (const auto& name : checks) {
      if (name != "axioms" && name != "kp" && name != "two_weight" && name != "essentialness") {
        throw ConfigError("checks: unknown check '" + name + "'");
      }
    }

    RunResult result;
    bool all = true;
    std::ostringstream summary;
    for (const auto& [role, w] : weights) {
      for (const auto& name : checks) {
        ConditionReport rep;
        if (name == "axioms") {
          rep = check_weight_axioms(w, default_axiom_grid());
        } else if (name == "kp") {
          const auto phi = GrowthFunction::from_weight(w);
          rep = check_kp_condition(phi, default_condition_grid(phi.r_phi()));
        } else if (name == "two_weight") {
          rep = check_two_weight_conditions(w, delta, default_condition_grid(w.patch_radius()));
        } else {
          rep = check_essentialness(ExponentFunction::from_weight(w), default_condition_grid(w.patch_radius()));
        }
        all = all && rep.passed;
        summary << role << " " << w.name() << " " << name << ": " << (rep.passed ? "passed" : "FAILED");
        for (const auto& s : rep.subchecks) {
          if (!s.passed) summary << " [" << s.name << " failed]";
        }
        summary << "\n";
        Json j = to_json(rep);
        j["weight"] = weight_to_json(w);
        result.artifacts.push_back({role + "_" + name + ".json", dump_json(j)});
      }
    }
    result.exit_code = all ? kExitOk : kExitChecksFailed;
    result.message = summary.str();
    return result;
  });
}

RunResult cmd_classify(const Json& config, const std::string& op) {
  return guarded([&]() -> RunResult {
    if (op != "volterra" && op != "mult") throw ConfigError("operator: expected 'volterra' or 'mult'");
    const RunConfig c = parse_run_config(config);
    if (!c.source_weight) throw ConfigError("source_weight: missing");
    if (!c.symbol) throw ConfigError("symbol: missing");
    const RadialWeight v = parse_weight(*c.source_weight, "source_weight");
    const RadialWeight w = c.target_weight ? parse_weight(*c.target_weight, "target_weight") : v;
    const SymbolSpec sym = parse_symbol(*c.symbol, c.truncation);
    VolterraOptions opts = options_from(c);
    opts.symbol_is_polynomial = sym.is_polynomial;

    const Classification cls =
        op == "volterra" ? classify_volterra(v, w, sym.poly, opts) : classify_multiplication(v, w, sym.poly, opts);
    Json j = to_json(cls);
    j["operator"] = op;
    j["source_weight"] = weight_to_json(v);
    j["target_weight"] = weight_to_json(w);
    RunResult r;
    r.artifacts.push_back({"classification.json", dump_json(j)});
    r.artifacts.push_back({"curve.csv", curve_csv(cls.evidence)});
    r.message = std::string(op) + ": " + to_string(cls.verdict) + " (slope " + format_double(cls.slope) +
                ", proxy " + to_string(cls.proxy) + ")\n";
    return r;
  });
}

RunResult cmd_corollary_table(double alpha, const std::vector<double>& p_list, int max_deg, const Json& config) {
  return guarded([&]() -> RunResult {
    if (p_list.empty()) throw ConfigError("p: at least one value required");
    if (max_deg < 0) throw ConfigError("max_deg: must be >= 0");
    const RunConfig c = parse_run_config(config);
    VolterraOptions opts = options_from(c);
    opts.symbol_is_polynomial = false;  // agreement is reported in the table instead

    std::ostringstream csv;
    csv << "alpha,p";
    for (int d = 0; d <= max_deg; ++d) csv << ",deg" << d;
    csv << ",oracle_agree\n";
    bool all_agree = true;
    std::ostringstream msg;
    for (double p : p_list) {
      const RadialWeight v = RadialWeight::make(ExpPowerParams{alpha, p});
      csv << format_double(alpha) << "," << format_double(p);
      bool row_agree = true;
      for (int d = 0; d <= max_deg; ++d) {
        const auto g = TaylorPolynomial::monomial(static_cast<std::size_t>(d));
        const Verdict got = classify_volterra(v, v, g, opts).verdict;
        csv << "," << to_string(got);
        try {
          if (oracle_exp_power(alpha, p, d) != got) row_agree = false;
        } catch (const PartialOracleError&) {
          if (got == Verdict::Compact) row_agree = false;
        }
      }
      csv << "," << (row_agree ? "yes" : "no") << "\n";
      if (!row_agree) msg << "disagreement at p = " << format_double(p) << "\n";
      all_agree = all_agree && row_agree;
    }
    RunResult r;
    r.exit_code = all_agree ? kExitOk : kExitOracleDisagreement;
    r.artifacts.push_back({"corollary_table.csv", csv.str()});
    r.message = all_agree ? "all cells agree with the polynomial-degree rule\n" : msg.str();
    return r;
  });
}

RunResult cmd_lp_check(const Json& config) {
  return guarded([&]() -> RunResult {
    const RunConfig c = parse_run_config(config);
    const RadialWeight w = c.source_weight ? parse_weight(*c.source_weight, "source_weight")
                                           : RadialWeight::exp_power(1.0, 2.0);
    const GrowthFunction phi = GrowthFunction::from_weight(w);
    const auto kp = check_kp_condition(phi, default_condition_grid(phi.r_phi()));
    if (!kp.passed) throw PreconditionError("kp_condition", "phi = 1/" + w.name() + " fails the K_p condition");

    const auto grid = default_norm_grid(c.grid_given ? c.grid.r_max : 50.0, 400);
    const RadialWeight u = derived_weight_u(phi);

    std::ostringstream csv;
    csv << "label,degree,log_norm_f_w,log_norm_df_u,ratio_derivative,ratio_lp\n";
    bool finite = true;
    double c_env = 1.0;
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;

    auto emit = [&](const std::string& label, const TaylorPolynomial& f, bool in_envelope) {
      const double lf = weighted_norm_log(f, w, grid).log_norm;
      const auto df = differentiate(f);
      const double ld = df.is_zero() ? -std::numeric_limits<double>::infinity()
                                     : weighted_norm_log(df, u, grid).log_norm;
      const auto [r1, r2] = lp_ratio(phi, f, grid);
      finite = finite && std::isfinite(r1) && std::isfinite(r2) && std::isfinite(lf);
      csv << label << "," << f.degree() << "," << format_double(lf) << "," << format_double(ld) << ","
          << format_double(r1) << "," << format_double(r2) << "\n";
      if (in_envelope) {
        for (double x : {r1, r2}) {
          min_ratio = std::min(min_ratio, x);
          max_ratio = std::max(max_ratio, x);
          c_env = std::max({c_env, x, 1.0 / x});
        }
      }
    };

    emit("const", TaylorPolynomial(std::vector<Complex>{1.0}), false);
    emit("z", TaylorPolynomial::monomial(1), false);
    const auto polys = random_polynomials(c.seed, c.sample_count);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      char label[32];
      std::snprintf(label, sizeof label, "rand_%03zu", i);
      emit(label, polys[i], true);
    }

    Json env;
    env["C"] = c_env;
    env["min_ratio"] = min_ratio;
    env["max_ratio"] = max_ratio;
    env["count"] = polys.size();
    env["seed"] = c.seed;
    env["weight"] = weight_to_json(w);
    env["r_phi"] = phi.r_phi();

    RunResult r;
    r.exit_code = finite ? kExitOk : kExitCoverage;
    r.artifacts.push_back({"lp_check.csv", csv.str()});
    r.artifacts.push_back({"lp_envelope.json", dump_json(env)});
    r.message = "envelope constant C = " + format_double(c_env) + "\n";
    return r;
  });
}

}  // namespace vfock
