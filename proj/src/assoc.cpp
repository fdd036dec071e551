#include "vfock/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "vfock/errors.hpp"
#include "vfock/numeric.hpp"

namespace vfock {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMinLogRadius = -50.0;

MonomialNorm monomial_norm_from(const RadialWeight& v, std::size_t n, double t_start) {
  if (n == 0) {
    // v is non-increasing, so the sup of v is v(0).
    return {v.log_value(0.0), kNegInf};
  }
  const double dn = static_cast<double>(n);
  auto objective = [&](double t) {
    const double val = dn * t + v.log_value_at_log_r(t);
    return std::isnan(val) ? kNegInf : val;
  };
  const ScalarMax m = bracket_and_maximize(objective, t_start, 0.25, kMinLogRadius, kMaxLogRadius);
  if (!std::isfinite(m.value)) {
    throw DomainCoverageError("monomial norm of z^" + std::to_string(n) + " is not finite for " +
                              v.name());
  }
  return {m.value, m.x};
}

double analytic_start(const RadialWeight& v, std::size_t n) {
  if (v.family() == WeightFamily::ExpPower) {
    const auto& e = std::get<ExpPowerParams>(*v.params());
    return std::log(static_cast<double>(n) / (e.alpha * e.p)) / e.p;
  }
  return 0.0;
}

}  // namespace

MonomialNorm monomial_norm(const RadialWeight& v, std::size_t n) {
  return monomial_norm_from(v, n, analytic_start(v, n));
}

MonomialNormTable::MonomialNormTable(const RadialWeight& v, std::size_t max_degree) : weight_(v) {
  log_norms_.reserve(max_degree + 1);
  maximizers_.reserve(max_degree + 1);
  double t_prev = 0.0;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    // Maximizers are non-decreasing in n, so the previous one is a good start.
    const double start = v.family() == WeightFamily::ExpPower || n <= 1
                             ? analytic_start(v, std::max<std::size_t>(n, 1))
                             : t_prev;
    MonomialNorm m{};
    try {
      m = monomial_norm_from(v, n, start);
    } catch (const DomainCoverageError&) {
      // Fewer monomials still give a valid (looser) upper envelope.
      if (n < 2) throw;
      truncated_ = true;
      break;
    }
    log_norms_.push_back(m.log_norm);
    maximizers_.push_back(n == 0 ? 0.0 : std::exp(m.log_maximizer));
    if (n > 0) t_prev = m.log_maximizer;
  }
}

double assoc_upper_log(const MonomialNormTable& table, double r) {
  if (r < 0.0) throw ParameterError("assoc_upper_log: r >= 0 required");
  const auto norms = table.log_norms();
  if (r == 0.0) return norms[0];
  const double t = std::log(r);
  double best = norms[0];
  for (std::size_t n = 1; n < norms.size(); ++n) {
    best = std::min(best, norms[n] - static_cast<double>(n) * t);
  }
  return best;
}

std::size_t default_table_degree(const RadialWeight& v, double r_max) {
  if (v.family() == WeightFamily::ExpPower) {
    const auto& e = std::get<ExpPowerParams>(*v.params());
    const double n = std::ceil(4.0 * e.alpha * std::pow(r_max, e.p));
    return static_cast<std::size_t>(std::clamp(n, 8.0, static_cast<double>(kMaxTableDegree)));
  }
  return 400;
}

std::vector<SandwichRow> sandwich_report(const MonomialNormTable& table, std::span<const double> grid) {
  std::vector<SandwichRow> rows;
  rows.reserve(grid.size());
  for (double r : grid) {
    const double lv = table.weight().log_value(r);
    const double lm = assoc_upper_log(table, r);
    rows.push_back({r, lv, lm, lm - lv});
  }
  return rows;
}

std::vector<SandwichRow> sandwich_report(const RadialWeight& v, std::span<const double> grid,
                                         std::size_t max_degree) {
  return sandwich_report(MonomialNormTable(v, max_degree), grid);
}

}  // namespace vfock
