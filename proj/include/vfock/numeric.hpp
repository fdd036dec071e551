#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vfock {

// Largest argument passed to std::exp anywhere in the library.
inline constexpr double kMaxExpArgument = 700.0;

std::vector<double> log_grid(double r_min, double r_max, std::size_t points);
std::vector<double> linear_grid(double r_min, double r_max, std::size_t points);

/// log(sum_i exp(terms[i])); -inf entries are skipped, all -inf gives -inf.
double log_sum_exp(std::span<const double> terms);

/// exp(x) with the argument clamped to kMaxExpArgument.
double safe_exp(double x);

struct ScalarMax {
  double x;
  double value;
};

/// Golden-section maximization of a unimodal f on [a, b]. On equal probe
/// values the left part of the bracket is kept, so ties resolve toward
/// smaller x. The result is never worse than max(f(a), f(b)).
ScalarMax golden_section_max(const std::function<double(double)>& f, double a, double b,
                             int iterations = 60);

/// Maximize a concave f on the real line, starting from `start`. Expands a
/// bracket geometrically from `initial_step`, then refines by golden section
/// until the bracket is below `x_tol` (relative to 1 + |x|). Throws
/// DomainCoverageError when the bracket would leave [lower, upper].
ScalarMax bracket_and_maximize(const std::function<double(double)>& f, double start,
                               double initial_step, double lower, double upper,
                               double x_tol = 1e-13);

/// Ordinary least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// Index of the first sample of the trailing `fraction` of n samples.
std::size_t tail_begin(std::size_t n, double fraction);

/// Tail test used to decide "sup is finite" from samples: the tail is
/// non-increasing (up to rel_tol_step) or stays within plateau_tol relative.
bool tail_nonincreasing_or_plateau(std::span<const double> values, double plateau_tol = 0.01,
                                   double rel_tol_step = 1e-12);

/// Mirror of the above for lower bounds: tail non-decreasing or plateau.
bool tail_nondecreasing_or_plateau(std::span<const double> values, double plateau_tol = 0.01,
                                   double rel_tol_step = 1e-12);

/// "sup over the tail is finite": non-increasing, plateau, or rising with
/// increments that shrink to at most half their initial size (a convergent
/// approach to a finite limit on a log-spaced grid).
bool tail_bounded_above(std::span<const double> values, double plateau_tol = 0.01);

/// Mirror of tail_bounded_above for "inf over the tail is positive/finite".
bool tail_bounded_below(std::span<const double> values, double plateau_tol = 0.01);

}  // namespace vfock
