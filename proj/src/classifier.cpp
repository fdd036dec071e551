#include "vfock/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "vfock/assoc.hpp"
#include "vfock/numeric.hpp"

namespace vfock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

CriterionCurve vanishing_curve(CurveForm form, double r_start) {
  CriterionCurve c;
  c.form = form;
  c.r_start = r_start;
  c.vanishing = true;
  return c;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Unbounded: return "Unbounded";
    case Verdict::Bounded: return "Bounded";
    case Verdict::Compact: return "Compact";
  }
  return "?";
}

const char* to_string(CurveForm f) {
  switch (f) {
    case CurveForm::PhiForm: return "phi";
    case CurveForm::TwoWeightForm: return "two_weight";
    case CurveForm::MultForm: return "mult";
  }
  return "?";
}

const char* to_string(ProxyKind p) { return p == ProxyKind::Weight ? "v" : "vM"; }

CriterionCurve criterion_curve_phi(const LogWeightFn& proxy_log, const GrowthFunction& phi,
                                   const TaylorPolynomial& g, std::span<const double> grid) {
  const TaylorPolynomial dg = differentiate(g);
  if (dg.is_zero()) return vanishing_curve(CurveForm::PhiForm, phi.r_phi());
  CriterionCurve c;
  c.form = CurveForm::PhiForm;
  c.r_start = phi.r_phi();
  for (double r : grid) {
    if (r < phi.r_phi()) continue;
    c.samples.emplace_back(r, log_coeff_majorant(dg, r) - phi.log_phi_prime(r) - proxy_log(r));
  }
  return c;
}

CriterionCurve criterion_curve_two_weight(const LogWeightFn& proxy_log, const RadialWeight& w,
                                          const TaylorPolynomial& g, std::span<const double> grid,
                                          double r_start) {
  const TaylorPolynomial dg = differentiate(g);
  if (dg.is_zero()) return vanishing_curve(CurveForm::TwoWeightForm, r_start);
  CriterionCurve c;
  c.form = CurveForm::TwoWeightForm;
  c.r_start = r_start;
  for (double r : grid) {
    if (r < r_start) continue;
    c.samples.emplace_back(r, 2.0 * w.log_value(r) + log_coeff_majorant(dg, r) -
                                  w.log_abs_derivative(r) - proxy_log(r));
  }
  return c;
}

CriterionCurve criterion_curve_mult(const LogWeightFn& proxy_log, const RadialWeight& w,
                                    const TaylorPolynomial& h, std::span<const double> grid) {
  if (h.is_zero()) return vanishing_curve(CurveForm::MultForm, grid.empty() ? 0.0 : grid.front());
  CriterionCurve c;
  c.form = CurveForm::MultForm;
  c.r_start = grid.empty() ? 0.0 : grid.front();
  for (double r : grid) {
    c.samples.emplace_back(r, w.log_value(r) + log_coeff_majorant(h, r) - proxy_log(r));
  }
  return c;
}

Classification classify(const CriterionCurve& curve, const ClassifyOptions& opts) {
  Classification out;
  out.evidence = curve;
  if (curve.vanishing) {
    out.verdict = Verdict::Compact;
    out.slope = -kInf;
    out.tail_value = -kInf;
    out.warnings.push_back("operator is identically zero");
    return out;
  }
  if (!(opts.slope_tol > 0.0) || !(opts.tail_fraction > 0.0 && opts.tail_fraction <= 1.0)) {
    throw ParameterError("classify: slope_tol > 0 and 0 < tail_fraction <= 1 required");
  }
  const auto& s = curve.samples;
  if (s.size() < 16) {
    throw ParameterError("classify: curve needs at least 16 samples, got " + std::to_string(s.size()));
  }
  if (!(s.front().first > 0.0) || s.back().first < 10.0 * s.front().first) {
    throw ParameterError("classify: curve must span at least one decade in r");
  }
  for (const auto& [r, lq] : s) {
    if (!std::isfinite(lq)) throw InconclusiveError("criterion ratio is not finite at r = " + fmt(r), curve);
  }

  const std::size_t tb = tail_begin(s.size(), opts.tail_fraction);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = tb; i < s.size(); ++i) {
    x.push_back(std::log(s[i].first));
    y.push_back(s[i].second);
  }

  int sign_changes = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double d = y[i] - y[i - 1];
    const double eps = 1e-9 * std::max(1.0, std::abs(y[i]));
    if (std::abs(d) <= eps) continue;
    const int sign = d > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++sign_changes;
    last_sign = sign;
  }
  const double slope = least_squares_slope(x, y);
  if (sign_changes > 3) {
    // Ripple below kOscillationAmplitude around the fitted line (e.g. from the
    // discrete minimum in v_M) does not count as oscillation.
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double lo = kInf;
    double hi = -kInf;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double res = y[i] - (my + slope * (x[i] - mx));
      lo = std::min(lo, res);
      hi = std::max(hi, res);
    }
    if (hi - lo > kOscillationAmplitude) {
      throw InconclusiveError("criterion ratio oscillates on the tail (" + std::to_string(sign_changes) +
                                  " slope sign changes, amplitude " + fmt(hi - lo) + ")",
                              curve);
    }
    out.warnings.push_back("small ripple on the tail ignored (" + std::to_string(sign_changes) +
                           " slope sign changes, amplitude " + fmt(hi - lo) + ")");
  }

  const double drop = y.front() - y.back();
  out.slope = slope;
  out.tail_value = y.back();
  if (slope > opts.slope_tol) {
    out.verdict = Verdict::Unbounded;
  } else if (slope < -opts.slope_tol || drop >= 2.0) {
    out.verdict = Verdict::Compact;
  } else {
    out.verdict = Verdict::Bounded;
    if (drop > 0.1) {
      out.warnings.push_back("slow decay of q over the tail (log q drops by " + fmt(drop) +
                             "); classified Bounded");
    } else if (-drop > 0.1) {
      out.warnings.push_back("slow growth of q over the tail (log q rises by " + fmt(-drop) +
                             "); classified Bounded");
    }
  }
  return out;
}

Verdict oracle_exp_power(double alpha, double p, long deg) {
  if (!(alpha > 0.0) || !(p > 0.0)) throw ParameterError("oracle_exp_power: alpha > 0 and p > 0 required");
  if (deg <= 0 || static_cast<double>(deg) < p) return Verdict::Compact;
  if (p < 1.0) {
    throw PartialOracleError("boundedness rule is stated for p >= 1 only; V_g is not compact");
  }
  return static_cast<double>(deg) <= std::floor(p) ? Verdict::Bounded : Verdict::Unbounded;
}

namespace {

struct Proxy {
  LogWeightFn fn;
  ProxyKind kind;
  std::vector<std::string> warnings;
  // v_M is only trusted up to the largest monomial maximizer in its table.
  double coverage = kInf;
};

Proxy make_proxy(const RadialWeight& v, double r_max, const VolterraOptions& opts) {
  ProxyKind kind = ProxyKind::Envelope;
  std::vector<std::string> warnings;
  if (opts.force_proxy) {
    kind = *opts.force_proxy;
  } else if (v.has_derivatives()) {
    const auto grid = default_condition_grid(v.patch_radius());
    if (check_essentialness(ExponentFunction::from_weight(v), grid).passed) kind = ProxyKind::Weight;
  }
  if (kind == ProxyKind::Weight) {
    return {[v](double r) { return v.log_value(r); }, kind, warnings};
  }
  const std::size_t n = opts.table_degree > 0 ? opts.table_degree : default_table_degree(v, r_max);
  auto table = std::make_shared<const MonomialNormTable>(v, n);
  if (table->truncated()) {
    warnings.push_back("monomial table stopped at degree " + std::to_string(table->max_degree()) +
                       " (maximizers beyond the supported radius)");
  }
  const double coverage = table->maximizers().back();
  return {[table](double r) { return assoc_upper_log(*table, r); }, kind, warnings, coverage};
}

// Log grid on [max(r_start, 1, r_min), r_max], widened to a decade when
// r_max is too close, then capped at the proxy coverage radius.
std::vector<double> criterion_grid(double r_start, const VolterraOptions& opts, const Proxy& proxy,
                                   std::vector<std::string>& warnings) {
  double lo = std::max(r_start, 1.0);
  if (opts.r_min) lo = std::max(lo, *opts.r_min);
  double hi = opts.r_max;
  if (hi < 10.0 * lo) {
    hi = 10.0 * lo;
    warnings.push_back("r_max raised to " + fmt(hi) + " so the curve spans a decade");
  }
  if (hi > proxy.coverage) {
    if (proxy.coverage < 10.0 * lo) {
      throw DomainCoverageError("monomial envelope covers r <= " + fmt(proxy.coverage) +
                                " only, less than a decade above r = " + fmt(lo));
    }
    hi = proxy.coverage;
    warnings.push_back("r_max capped at " + fmt(hi) + " where the monomial table ends");
  }
  return log_grid(lo, hi, std::max<std::size_t>(opts.grid_points, 16));
}

double planned_r_max(double r_start, const VolterraOptions& opts) {
  double lo = std::max(r_start, 1.0);
  if (opts.r_min) lo = std::max(lo, *opts.r_min);
  return std::max(opts.r_max, 10.0 * lo);
}

void require_axioms(const RadialWeight& v, const char* role) {
  const auto rep = check_weight_axioms(v, default_axiom_grid());
  if (!rep.passed) {
    throw PreconditionError(std::string("weight_axioms(") + role + ")",
                            std::string("weight axioms fail for ") + role + " = " + v.name() + ": " +
                                rep.notes);
  }
}

}  // namespace

Classification classify_volterra(const RadialWeight& v, const RadialWeight& w,
                                 const TaylorPolynomial& g, const VolterraOptions& opts) {
  require_axioms(v, "v");
  require_axioms(w, "w");
  if (!w.has_derivatives()) {
    throw PreconditionError("closed_form_target",
                            "target weight '" + w.name() + "' has no closed-form derivatives");
  }

  // Prefer the growth-function form; fall back to the two-weight form.
  std::optional<GrowthFunction> phi;
  std::string why_not_phi;
  try {
    GrowthFunction candidate = GrowthFunction::from_weight(w);
    const auto grid = default_condition_grid(candidate.r_phi());
    const auto kp = check_kp_condition(candidate, grid);
    const auto growth = check_growth_condition(candidate, grid);
    if (kp.passed && growth.passed) {
      phi = std::move(candidate);
    } else {
      why_not_phi = !kp.passed ? "kp_condition" : "growth_condition";
    }
  } catch (const DomainCoverageError& e) {
    why_not_phi = e.what();
  }

  double r_start = 0.0;
  if (phi) {
    r_start = phi->r_phi();
  } else {
    const auto rep = check_two_weight_conditions(w, opts.delta, default_condition_grid(w.patch_radius()));
    if (!rep.passed) {
      throw PreconditionError("two_weight_conditions",
                              "target weight " + w.name() + " fails " + why_not_phi +
                                  " and the two-weight conditions: " + rep.notes);
    }
    r_start = rep.onset_radius.value_or(w.patch_radius());
  }

  Proxy proxy = make_proxy(v, planned_r_max(r_start, opts), opts);
  std::vector<std::string> warnings = proxy.warnings;
  const auto grid = criterion_grid(r_start, opts, proxy, warnings);

  CriterionCurve curve = phi ? criterion_curve_phi(proxy.fn, *phi, g, grid)
                             : criterion_curve_two_weight(proxy.fn, w, g, grid, r_start);
  Classification out = classify(curve, opts.classify);
  out.proxy = proxy.kind;
  out.warnings.insert(out.warnings.end(), warnings.begin(), warnings.end());
  if (v.family() == WeightFamily::ExpPower) out.weak_compact_note = kInterpolationNote;

  if (opts.symbol_is_polynomial && v.family() == WeightFamily::ExpPower && v.same_as(w)) {
    const auto& e = std::get<ExpPowerParams>(*v.params());
    const long deg = std::max(g.degree(), 0L);
    try {
      const Verdict expected = oracle_exp_power(e.alpha, e.p, deg);
      if (expected != out.verdict) {
        throw ConsistencyError(std::string("numeric verdict ") + to_string(out.verdict) +
                               " disagrees with the polynomial-degree rule (" + to_string(expected) +
                               ") for " + v.name() + ", deg g = " + std::to_string(deg));
      }
    } catch (const PartialOracleError&) {
      if (out.verdict == Verdict::Compact) {
        throw ConsistencyError("numeric verdict Compact but deg g >= p for " + v.name());
      }
      out.warnings.push_back("no exact boundedness rule for p < 1; verdict from the curve only");
    }
  }
  return out;
}

Classification classify_multiplication(const RadialWeight& v, const RadialWeight& w,
                                       const TaylorPolynomial& h, const VolterraOptions& opts) {
  require_axioms(v, "v");
  require_axioms(w, "w");
  Proxy proxy = make_proxy(v, planned_r_max(1.0, opts), opts);
  std::vector<std::string> warnings = proxy.warnings;
  const auto grid = criterion_grid(1.0, opts, proxy, warnings);
  Classification out = classify(criterion_curve_mult(proxy.fn, w, h, grid), opts.classify);
  out.proxy = proxy.kind;
  out.warnings.insert(out.warnings.end(), warnings.begin(), warnings.end());
  if (v.family() == WeightFamily::ExpPower) out.weak_compact_note = kInterpolationNote;
  return out;
}

std::pair<double, double> lp_ratio(const GrowthFunction& phi, const TaylorPolynomial& f,
                                   std::span<const double> grid) {
  if (f.is_zero()) throw ParameterError("lp_ratio: f must be nonzero");
  const RadialWeight u = derived_weight_u(phi);
  const double log_f = weighted_norm_log(f, phi.weight(), grid).log_norm;
  const TaylorPolynomial df = differentiate(f);
  const double log_df = df.is_zero() ? -kInf : weighted_norm_log(df, u, grid).log_norm;
  const double f0 = std::abs(f.coeff(0));
  const double log_f0 = f0 > 0.0 ? std::log(f0) : -kInf;
  const double denom[] = {log_f0, log_df};
  const double first = std::exp(log_df - log_f);
  const double second = std::exp(log_f - log_sum_exp(denom));
  return {first, second};
}

}  // namespace vfock
