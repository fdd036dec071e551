#include "vfock/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vfock/errors.hpp"

namespace vfock {

namespace {
constexpr double kInvPhi = 0.6180339887498948482;  // 1/golden ratio
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

std::vector<double> log_grid(double r_min, double r_max, std::size_t points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 2) {
    throw ParameterError("log grid requires 0 < r_min < r_max and at least 2 points");
  }
  std::vector<double> out(points);
  const double a = std::log(r_min);
  const double b = std::log(r_max);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = std::exp(t);
  }
  out.front() = r_min;
  out.back() = r_max;
  return out;
}

std::vector<double> linear_grid(double r_min, double r_max, std::size_t points) {
  if (!(r_max > r_min) || points < 2) {
    throw ParameterError("linear grid requires r_min < r_max and at least 2 points");
  }
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  out.back() = r_max;
  return out;
}

double log_sum_exp(std::span<const double> terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double t : terms) {
    if (t != kNegInf) s += std::exp(t - m);
  }
  return m + std::log(s);
}

double safe_exp(double x) { return std::exp(std::min(x, kMaxExpArgument)); }

ScalarMax golden_section_max(const std::function<double(double)>& f, double a, double b,
                             int iterations) {
  if (b < a) std::swap(a, b);
  ScalarMax best{a, f(a)};
  const double fb = f(b);
  if (fb > best.value) best = {b, fb};

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc >= fd) {
    if (fc > best.value) best = {c, fc};
  } else if (fd > best.value) {
    best = {d, fd};
  }
  return best;
}

ScalarMax bracket_and_maximize(const std::function<double(double)>& f, double start,
                               double initial_step, double lower, double upper, double x_tol) {
  start = std::clamp(start, lower, upper);
  double step = initial_step;
  double x1 = start;
  double f1 = f(x1);

  // Decide the climbing direction.
  double right = std::min(x1 + step, upper);
  double f_right = f(right);
  double dir = 1.0;
  if (!(f_right > f1)) {
    const double left = std::max(x1 - step, lower);
    const double f_left = f(left);
    if (f_left > f1) {
      dir = -1.0;
    } else {
      // Already bracketed by the two neighbours.
      ScalarMax m = golden_section_max(f, left, right, 200);
      return m;
    }
  }

  double x0 = x1;
  double x2 = dir > 0 ? right : std::max(x1 - step, lower);
  double f2 = dir > 0 ? f_right : f(x2);
  while (f2 > f1) {
    if ((dir > 0 && x2 >= upper) || (dir < 0 && x2 <= lower)) {
      throw DomainCoverageError("maximizer lies beyond the supported search interval");
    }
    x0 = x1;
    x1 = x2;
    f1 = f2;
    step *= 2.0;
    x2 = dir > 0 ? std::min(x1 + step, upper) : std::max(x1 - step, lower);
    f2 = f(x2);
  }
  double a = std::min(x0, x2);
  double b = std::max(x0, x2);

  const double tol = x_tol * (1.0 + std::abs(x1));
  int iters = 1;
  if (b - a > tol) {
    iters = static_cast<int>(std::ceil(std::log(tol / (b - a)) / std::log(kInvPhi)));
  }
  ScalarMax best = golden_section_max(f, a, b, std::min(iters, 300));
  if (f1 > best.value) best = {x1, f1};
  return best;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares_slope: need matching spans of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::size_t tail_begin(std::size_t n, double fraction) {
  const auto len = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  return n - std::clamp<std::size_t>(len, std::min<std::size_t>(n, 2), n);
}

namespace {

bool plateau(std::span<const double> v, double tol) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return (*hi - *lo) <= tol * scale;
}

}  // namespace

bool tail_nonincreasing_or_plateau(std::span<const double> values, double plateau_tol,
                                   double rel_tol_step) {
  if (values.empty()) return false;
  for (double x : values) {
    if (!std::isfinite(x)) return false;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double allow = rel_tol_step * std::max(std::abs(values[i - 1]), 1e-300);
    if (values[i] > values[i - 1] + allow) {
      monotone = false;
      break;
    }
  }
  return monotone || plateau(values, plateau_tol);
}

bool tail_nondecreasing_or_plateau(std::span<const double> values, double plateau_tol,
                                   double rel_tol_step) {
  std::vector<double> neg(values.begin(), values.end());
  for (double& x : neg) x = -x;
  return tail_nonincreasing_or_plateau(neg, plateau_tol, rel_tol_step);
}

namespace {

bool converging_rise(std::span<const double> v) {
  if (v.size() < 3) return false;
  std::vector<double> d(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) d[i - 1] = v[i] - v[i - 1];
  const double scale = std::max(std::abs(v.front()), std::abs(v.back()));
  const double tiny = 1e-12 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < -tiny) return false;
    if (i > 0 && d[i] > d[i - 1] * (1.0 + 1e-9) + tiny) return false;
  }
  return d.back() <= 0.5 * d.front() + tiny;
}

}  // namespace

bool tail_bounded_above(std::span<const double> values, double plateau_tol) {
  if (tail_nonincreasing_or_plateau(values, plateau_tol)) return true;
  for (double x : values) {
    if (!std::isfinite(x)) return false;
  }
  return converging_rise(values);
}

bool tail_bounded_below(std::span<const double> values, double plateau_tol) {
  std::vector<double> neg(values.begin(), values.end());
  for (double& x : neg) x = -x;
  return tail_bounded_above(neg, plateau_tol);
}

}  // namespace vfock

namespace vfock {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::UnsupportedFamily: return "unsupported_family";
    case ErrorKind::DomainCoverage: return "domain_coverage";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::PartialOracle: return "partial_oracle";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace vfock
