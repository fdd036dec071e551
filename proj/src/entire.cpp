#include "vfock/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vfock/errors.hpp"
#include "vfock/numeric.hpp"

namespace vfock {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_terms(const TaylorPolynomial& f, double r) {
  const auto& c = f.coeffs();
  std::vector<double> terms(c.size(), kNegInf);
  const double log_r = std::log(r);  // -inf at r = 0
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double a = std::abs(c[n]);
    if (a == 0.0) continue;
    terms[n] = n == 0 ? std::log(a) : std::log(a) + static_cast<double>(n) * log_r;
  }
  return terms;
}
}  // namespace

TaylorPolynomial::TaylorPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ParameterError("Taylor coefficients must be finite");
    }
  }
}

TaylorPolynomial TaylorPolynomial::monomial(std::size_t n, Complex c) {
  std::vector<Complex> v(n + 1);
  v[n] = c;
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial TaylorPolynomial::exp_series(Complex scale, std::size_t truncation) {
  std::vector<Complex> v(truncation + 1);
  Complex term = 1.0;
  for (std::size_t n = 0; n <= truncation; ++n) {
    v[n] = term;
    term *= scale / static_cast<double>(n + 1);
  }
  return TaylorPolynomial(std::move(v));
}

long TaylorPolynomial::degree() const {
  for (std::size_t n = coeffs_.size(); n-- > 0;) {
    if (coeffs_[n] != Complex{}) return static_cast<long>(n);
  }
  return -1;
}

TaylorPolynomial TaylorPolynomial::operator+(const TaylorPolynomial& other) const {
  std::vector<Complex> v(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = coeff(n) + other.coeff(n);
  return TaylorPolynomial(std::move(v));
}

TaylorPolynomial TaylorPolynomial::operator-(const TaylorPolynomial& other) const {
  std::vector<Complex> v(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = coeff(n) - other.coeff(n);
  return TaylorPolynomial(std::move(v));
}

Complex evaluate(const TaylorPolynomial& f, Complex z) {
  const auto& c = f.coeffs();
  Complex acc{};
  for (std::size_t n = c.size(); n-- > 0;) acc = acc * z + c[n];
  return acc;
}

double log_coeff_majorant(const TaylorPolynomial& f, double r) {
  if (r < 0.0) throw ParameterError("log_coeff_majorant: r >= 0 required");
  const auto terms = log_terms(f, r);
  return log_sum_exp(terms);
}

double log_max_term(const TaylorPolynomial& f, double r) {
  if (r < 0.0) throw ParameterError("log_max_term: r >= 0 required");
  const auto terms = log_terms(f, r);
  return terms.empty() ? kNegInf : *std::max_element(terms.begin(), terms.end());
}

double log_max_modulus_lower(const TaylorPolynomial& f, double r, std::size_t angles) {
  if (angles < 8) throw ParameterError("max_modulus_lower: at least 8 angles required");
  if (r < 0.0) throw ParameterError("max_modulus_lower: r >= 0 required");
  const double scale = log_max_term(f, r);
  if (scale == kNegInf) return kNegInf;
  if (r == 0.0) return std::log(std::abs(f.coeff(0)));
  // f(r e^{i theta}) e^{-scale} = sum_n c_n e^{n log r - scale} e^{i n theta}
  const auto& c = f.coeffs();
  std::vector<Complex> scaled(c.size());
  const double log_r = std::log(r);
  for (std::size_t n = 0; n < c.size(); ++n) {
    scaled[n] = c[n] == Complex{} ? Complex{} : c[n] * std::exp(static_cast<double>(n) * log_r - scale);
  }
  const TaylorPolynomial g(std::move(scaled));
  double best = 0.0;
  for (std::size_t k = 0; k < angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
    best = std::max(best, std::abs(evaluate(g, std::polar(1.0, theta))));
  }
  return best == 0.0 ? kNegInf : scale + std::log(best);
}

double max_modulus_lower(const TaylorPolynomial& f, double r, std::size_t angles) {
  return std::exp(log_max_modulus_lower(f, r, angles));
}

TaylorPolynomial differentiate(const TaylorPolynomial& f) {
  const auto& c = f.coeffs();
  if (c.size() <= 1) return TaylorPolynomial(std::vector<Complex>{Complex{}});
  std::vector<Complex> d(c.size() - 1);
  for (std::size_t n = 0; n + 1 < c.size(); ++n) d[n] = static_cast<double>(n + 1) * c[n + 1];
  return TaylorPolynomial(std::move(d));
}

TaylorPolynomial integrate(const TaylorPolynomial& f) {
  const auto& c = f.coeffs();
  std::vector<Complex> out(c.size() + 1);
  for (std::size_t n = 1; n <= c.size(); ++n) out[n] = c[n - 1] / static_cast<double>(n);
  return TaylorPolynomial(std::move(out));
}

TaylorPolynomial multiply(const TaylorPolynomial& f, const TaylorPolynomial& h, std::size_t n_out) {
  const auto& a = f.coeffs();
  const auto& b = h.coeffs();
  std::vector<Complex> out(n_out + 1);
  for (std::size_t i = 0; i < a.size() && i <= n_out; ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= n_out; ++j) out[i + j] += a[i] * b[j];
  }
  return TaylorPolynomial(std::move(out));
}

TaylorPolynomial volterra(const TaylorPolynomial& g, const TaylorPolynomial& f, std::size_t n_out) {
  const auto product = multiply(f, differentiate(g), n_out == 0 ? 0 : n_out - 1);
  auto out = integrate(product).coeffs();
  out.resize(n_out + 1);
  return TaylorPolynomial(std::move(out));
}

NormEstimate weighted_norm_log(const TaylorPolynomial& f, const RadialWeight& v,
                               std::span<const double> grid) {
  if (grid.size() < 10) throw ParameterError("weighted_norm_log: grid needs at least 10 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1]) || grid[i - 1] < 0.0) {
      throw ParameterError("weighted_norm_log: grid must be increasing and non-negative");
    }
  }
  if (f.is_zero()) return {kNegInf, 0.0};

  auto objective = [&](double r) { return log_coeff_majorant(f, r) + v.log_value(r); };
  std::vector<double> obj(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) obj[i] = objective(grid[i]);

  const std::size_t tail = grid.size() - std::max<std::size_t>(2, grid.size() / 10);
  for (std::size_t i = tail + 1; i < grid.size(); ++i) {
    if (!(obj[i] < obj[i - 1])) {
      throw DomainCoverageError("weighted_norm_log: objective still increasing near r_max = " +
                                std::to_string(grid.back()) + "; extend the grid");
    }
  }

  // First index attaining the maximum: ties go to the smaller radius.
  std::size_t best = 0;
  for (std::size_t i = 1; i < obj.size(); ++i) {
    if (obj[i] > obj[best]) best = i;
  }
  NormEstimate est{obj[best], grid[best]};

  const double lo = best > 0 ? grid[best - 1] : grid[0];
  const double hi = best + 1 < grid.size() ? grid[best + 1] : grid[best];
  if (hi > lo) {
    ScalarMax m;
    if (lo > 0.0) {
      m = golden_section_max([&](double t) { return objective(std::exp(t)); }, std::log(lo),
                             std::log(hi), 60);
      m.x = std::exp(m.x);
    } else {
      m = golden_section_max(objective, lo, hi, 60);
    }
    if (m.value > est.log_norm) est = {m.value, m.x};
  }
  return est;
}

std::vector<double> default_norm_grid(double r_max, std::size_t points) {
  auto g = log_grid(1e-3, r_max, points);
  g.insert(g.begin(), 0.0);
  return g;
}

std::vector<NormDiagnosticRow> norm_diagnostics(const TaylorPolynomial& f, const RadialWeight& v,
                                                std::span<const double> grid) {
  std::vector<NormDiagnosticRow> rows;
  rows.reserve(grid.size());
  for (double r : grid) {
    const double m = log_coeff_majorant(f, r);
    const double w = v.log_value(r);
    rows.push_back({r, m, w, m + w});
  }
  return rows;
}

}  // namespace vfock
