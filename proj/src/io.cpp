#include "vfock/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vfock/errors.hpp"

namespace vfock {

namespace {

double number_field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + "." + key + ": missing");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const Json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? number_field(j, key, where) : fallback;
}

std::size_t count_field(const Json& j, const std::string& key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

void dump_rec(const Json& j, int indent, int level, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * level), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_rec(it.value(), indent, level + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (witness pairs) stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                          return e.is_number() || e.is_null();
                        });
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ",";
          out += flat ? " " : nl;
        }
        first = false;
        if (!flat) out += pad;
        dump_rec(e, indent, level + 1, out);
      }
      if (!flat) out += nl + close_pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

RadialWeight parse_weight(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field + ": expected an object");
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw ConfigError(field + ".family: missing or not a string");
  }
  const auto family = j.at("family").get<std::string>();
  std::optional<double> patch;
  if (j.contains("patch_radius")) patch = number_field(j, "patch_radius", field);
  if (family == "exp_power") {
    return RadialWeight::make(ExpPowerParams{number_field(j, "alpha", field), number_field(j, "p", field)},
                              patch);
  }
  if (family == "exp_power_log") {
    return RadialWeight::make(ExpPowerLogParams{number_field(j, "alpha", field), number_field(j, "p", field),
                                                number_field(j, "beta", field), number_field(j, "q", field)},
                              patch);
  }
  if (family == "log_power") return RadialWeight::make(LogPowerParams{number_field(j, "p", field)}, patch);
  if (family == "hardy") {
    return RadialWeight::make(
        HardyParams{number_or(j, "a", 0.0, field), number_or(j, "b", 0.0, field), number_or(j, "c", 0.0, field),
                    number_or(j, "d", 0.0, field), number_or(j, "k", 0.0, field), number_or(j, "m", 0.0, field)},
        patch);
  }
  throw ConfigError(field + ".family: unknown family '" + family + "'");
}

Json weight_to_json(const RadialWeight& w) {
  Json j;
  j["family"] = to_string(w.family());
  if (!w.params()) {
    j["name"] = w.name();
    return j;
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ExpPowerParams>) {
          j["alpha"] = p.alpha;
          j["p"] = p.p;
        } else if constexpr (std::is_same_v<T, ExpPowerLogParams>) {
          j["alpha"] = p.alpha;
          j["p"] = p.p;
          j["beta"] = p.beta;
          j["q"] = p.q;
        } else if constexpr (std::is_same_v<T, LogPowerParams>) {
          j["p"] = p.p;
        } else {
          j["a"] = p.a;
          j["b"] = p.b;
          j["c"] = p.c;
          j["d"] = p.d;
          j["k"] = p.k;
          j["m"] = p.m;
        }
      },
      *w.params());
  j["patch_radius"] = w.patch_radius();
  return j;
}

SymbolSpec parse_symbol(const Json& j, std::size_t default_truncation, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field + ": expected an object");
  if (j.contains("coeffs")) {
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || arr.empty()) throw ConfigError(field + ".coeffs: expected a non-empty array");
    std::vector<Complex> c;
    c.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& e = arr[i];
      const std::string where = field + ".coeffs[" + std::to_string(i) + "]";
      if (e.is_number()) {
        c.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError(where + ": expected [re, im]");
      }
    }
    return {TaylorPolynomial(std::move(c)), true};
  }
  if (j.contains("named")) {
    if (!j.at("named").is_string()) throw ConfigError(field + ".named: expected a string");
    const auto name = j.at("named").get<std::string>();
    if (name != "exp") throw ConfigError(field + ".named: unknown series '" + name + "'");
    const double scale = number_or(j, "scale", 1.0, field);
    const std::size_t n = j.contains("truncation") ? count_field(j, "truncation", field) : default_truncation;
    if (n < 1) throw ConfigError(field + ".truncation: must be >= 1");
    return {TaylorPolynomial::exp_series(scale, n), false};
  }
  throw ConfigError(field + ": expected 'coeffs' or 'named'");
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig c;
  if (j.contains("source_weight")) c.source_weight = j.at("source_weight");
  if (j.contains("target_weight")) c.target_weight = j.at("target_weight");
  if (j.contains("weight") && !c.source_weight) c.source_weight = j.at("weight");
  if (j.contains("symbol")) c.symbol = j.at("symbol");
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("grid: expected an object");
    c.grid_given = true;
    c.grid.r_min = number_or(g, "r_min", c.grid.r_min, "grid");
    c.grid.r_max = number_or(g, "r_max", c.grid.r_max, "grid");
    if (g.contains("points")) c.grid.points = count_field(g, "points", "grid");
  }
  if (j.contains("truncation")) c.truncation = count_field(j, "truncation", "config");
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances: expected an object");
    c.tolerances.slope_tol = number_or(t, "slope_tol", c.tolerances.slope_tol, "tolerances");
    c.tolerances.tail_fraction = number_or(t, "tail_fraction", c.tolerances.tail_fraction, "tolerances");
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigError("output_dir: expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("seed")) c.seed = count_field(j, "seed", "config");
  if (j.contains("samples")) c.sample_count = count_field(j, "samples", "config");
  if (j.contains("operator")) {
    if (!j.at("operator").is_string()) throw ConfigError("operator: expected a string");
    c.op = j.at("operator").get<std::string>();
  }
  if (j.contains("checks")) {
    if (!j.at("checks").is_array()) throw ConfigError("checks: expected an array of strings");
    for (const auto& e : j.at("checks")) {
      if (!e.is_string()) throw ConfigError("checks: expected an array of strings");
      c.checks.push_back(e.get<std::string>());
    }
  }

  if (!(c.grid.r_min < c.grid.r_max)) throw ConfigError("grid: r_min < r_max required");
  if (!(c.grid.r_min > 0.0)) throw ConfigError("grid.r_min: must be > 0");
  if (c.grid.points < 16) throw ConfigError("grid.points: must be >= 16");
  if (c.truncation < 1) throw ConfigError("truncation: must be >= 1");
  if (!(c.tolerances.slope_tol > 0.0)) throw ConfigError("tolerances.slope_tol: must be > 0");
  if (!(c.tolerances.tail_fraction > 0.0 && c.tolerances.tail_fraction <= 1.0)) {
    throw ConfigError("tolerances.tail_fraction: must be in (0, 1]");
  }
  return c;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out += "\n";
  return out;
}

Json to_json(const ConditionReport& rep) {
  Json j;
  j["name"] = rep.name;
  j["passed"] = rep.passed;
  j["sup_or_lim_estimate"] = rep.sup_or_lim_estimate;
  Json w = Json::array();
  for (const auto& [r, v] : rep.witness) w.push_back(Json::array({r, v}));
  j["witness"] = std::move(w);
  j["notes"] = rep.notes;
  if (rep.onset_radius) j["onset_radius"] = *rep.onset_radius;
  if (!rep.subchecks.empty()) {
    Json subs = Json::array();
    for (const auto& s : rep.subchecks) subs.push_back(to_json(s));
    j["subchecks"] = std::move(subs);
  }
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["slope"] = c.slope;
  j["tail_value"] = c.tail_value;
  j["proxy"] = to_string(c.proxy);
  j["form"] = to_string(c.evidence.form);
  j["weak_compact_note"] = c.weak_compact_note;
  j["warnings"] = c.warnings;
  j["spaces"] = "H^inf_v -> H^inf_w and H^0_v -> H^0_w";
  j["r_start"] = c.evidence.r_start;
  j["samples"] = c.evidence.samples.size();
  return j;
}

std::string curve_csv(const CriterionCurve& curve) {
  std::ostringstream os;
  os << "r,log_q\n";
  for (const auto& [r, lq] : curve.samples) os << format_double(r) << "," << format_double(lq) << "\n";
  return os.str();
}

}  // namespace vfock
