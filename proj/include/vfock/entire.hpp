#pragma once

// Truncated Taylor series standing in for entire functions, with the
// differentiation (D), integration (J), multiplication (M_h) and Volterra
// (V_g) operators, and log-domain size functionals.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vfock/weight.hpp"

namespace vfock {

using Complex = std::complex<double>;

class TaylorPolynomial {
 public:
  TaylorPolynomial() = default;
  /// c[n] multiplies z^n. Throws ParameterError on non-finite coefficients.
  explicit TaylorPolynomial(std::vector<Complex> coeffs);

  static TaylorPolynomial monomial(std::size_t n, Complex c = 1.0);
  /// Truncation at degree N of exp(scale z).
  static TaylorPolynomial exp_series(Complex scale, std::size_t truncation);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Truncation degree (coeffs().size() - 1), -1 for an empty sequence.
  long truncation() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Largest n with c_n != 0; -1 stands for the zero function's -inf.
  long degree() const;
  bool is_zero() const { return degree() < 0; }
  Complex coeff(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : Complex{}; }

  TaylorPolynomial operator+(const TaylorPolynomial& other) const;
  TaylorPolynomial operator-(const TaylorPolynomial& other) const;

 private:
  std::vector<Complex> coeffs_;
};

Complex evaluate(const TaylorPolynomial& f, Complex z);

/// log sum_n |c_n| r^n, by log-sum-exp; -inf for the zero function.
double log_coeff_majorant(const TaylorPolynomial& f, double r);

/// log max_n |c_n| r^n (Cauchy lower bound for M(f, r)).
double log_max_term(const TaylorPolynomial& f, double r);

/// max over K equally spaced angles (theta = 0 included) of |f(r e^{i theta})|.
/// Needs K >= 8.
double max_modulus_lower(const TaylorPolynomial& f, double r, std::size_t angles);
/// Same, returned as a logarithm and evaluated with the largest term factored out.
double log_max_modulus_lower(const TaylorPolynomial& f, double r, std::size_t angles);

TaylorPolynomial differentiate(const TaylorPolynomial& f);
TaylorPolynomial integrate(const TaylorPolynomial& f);
/// Cauchy product truncated at degree n_out.
TaylorPolynomial multiply(const TaylorPolynomial& f, const TaylorPolynomial& h, std::size_t n_out);
/// V_g f = J(f g') truncated at degree n_out.
TaylorPolynomial volterra(const TaylorPolynomial& g, const TaylorPolynomial& f, std::size_t n_out);

struct NormEstimate {
  double log_norm;
  double argmax;
};

/// Upper-bound surrogate for log ||f||_v = log sup_r v(r) M(f, r), using the
/// coefficient majorant in place of M(f, r). The grid must start at 0 or close
/// to it and reach past the maximizer: the objective has to be decreasing over
/// the final 10% of the grid, otherwise DomainCoverageError is thrown. The
/// discrete maximizer is refined by 60 golden-section steps in log r.
NormEstimate weighted_norm_log(const TaylorPolynomial& f, const RadialWeight& v,
                               std::span<const double> grid);

/// Grid {0} followed by `points` log-spaced radii in [1e-3, r_max].
std::vector<double> default_norm_grid(double r_max, std::size_t points = 400);

struct NormDiagnosticRow {
  double r;
  double log_majorant;
  double log_weight;
  double sum;
};

std::vector<NormDiagnosticRow> norm_diagnostics(const TaylorPolynomial& f, const RadialWeight& v,
                                                std::span<const double> grid);

}  // namespace vfock
