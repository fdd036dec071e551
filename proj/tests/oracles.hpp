#pragma once

// Reference computations used by the tests. None of these call into the
// library code they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kE = 2.718281828459045235360287;

// Dense sampling on [a, b] followed by repeated local zoom. Returns (x, f(x)).
inline std::pair<double, double> dense_max(const std::function<double(double)>& f, double a, double b,
                                           int samples = 4001, int zooms = 40) {
  double lo = a;
  double hi = b;
  double best_x = a;
  double best = f(a);
  for (int z = 0; z < zooms; ++z) {
    const double h = (hi - lo) / (samples - 1);
    for (int i = 0; i < samples; ++i) {
      const double x = lo + h * i;
      const double y = f(x);
      if (y > best) {
        best = y;
        best_x = x;
      }
    }
    lo = std::max(a, best_x - 2 * h);
    hi = std::min(b, best_x + 2 * h);
    if (hi - lo < 1e-15 * (1 + std::abs(best_x))) break;
  }
  return {best_x, best};
}

// Fourth-order central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double second_derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

// log sum_n r^n / n! for n <= N in long double with a running maximum shift.
inline double log_exp_partial_sum(int N, double r) {
  std::vector<long double> logs;
  long double mx = -INFINITY;
  for (int n = 0; n <= N; ++n) {
    const long double t = n * std::log((long double)r) - std::lgamma((long double)n + 1);
    logs.push_back(t);
    mx = std::max(mx, t);
  }
  long double s = 0;
  for (auto t : logs) s += std::exp(t - mx);
  return static_cast<double>(mx + std::log(s));
}

// Closed form of log sup_r r^n exp(-alpha r^p), n >= 1.
inline double exp_power_monomial_log_norm(double alpha, double p, double n) {
  return (n / p) * (std::log(n / (alpha * p)) - 1.0);
}

inline double exp_power_monomial_maximizer(double alpha, double p, double n) {
  return std::pow(n / (alpha * p), 1.0 / p);
}

// Independent sampler for random coefficient sequences in the unit disc.
inline std::vector<std::complex<double>> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> c(n);
  for (auto& x : c) {
    double a;
    double b;
    do {
      a = u(rng);
      b = u(rng);
    } while (a * a + b * b > 1.0);
    x = {a, b};
  }
  return c;
}

inline double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle
