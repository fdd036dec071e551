#pragma once

// Monomial norms ||z^n||_v and the envelope
//   v_M(r) = min_n ||z^n||_v r^{-n},
// a computable upper bound for the associated weight: v <= v~ <= v_M.

#include <cstddef>
#include <span>
#include <vector>

#include "vfock/weight.hpp"

namespace vfock {

/// Largest log r the monomial-norm searches will consider.
inline constexpr double kMaxLogRadius = 1e6;

struct MonomialNorm {
  double log_norm;
  double log_maximizer;  // log r_n; -inf for n = 0
};

/// log sup_r r^n v(r), maximized in t = log r by bracketed golden section.
/// ExpPower weights centre the bracket on the analytic maximizer
/// (n / (alpha p))^{1/p}. Throws DomainCoverageError when the maximizer lies
/// beyond log r = kMaxLogRadius.
MonomialNorm monomial_norm(const RadialWeight& v, std::size_t n);
inline double monomial_norm_log(const RadialWeight& v, std::size_t n) {
  return monomial_norm(v, n).log_norm;
}

class MonomialNormTable {
 public:
  /// Norms for n = 0..max_degree. Stops early (truncated() == true) at the
  /// first n whose maximizer lies beyond log r = kMaxLogRadius.
  MonomialNormTable(const RadialWeight& v, std::size_t max_degree);

  const RadialWeight& weight() const { return weight_; }
  std::size_t max_degree() const { return log_norms_.size() - 1; }
  std::span<const double> log_norms() const { return log_norms_; }
  /// Maximizing radii r_n (0 for n = 0).
  std::span<const double> maximizers() const { return maximizers_; }
  bool truncated() const { return truncated_; }

 private:
  RadialWeight weight_;
  std::vector<double> log_norms_;
  std::vector<double> maximizers_;
  bool truncated_ = false;
};

/// log v_M(r) = min_{0<=n<=N} (log ||z^n||_v - n log r); log ||1||_v at r = 0.
double assoc_upper_log(const MonomialNormTable& table, double r);

/// Default table size: 4 alpha r_max^p for ExpPower (capped), 400 otherwise.
std::size_t default_table_degree(const RadialWeight& v, double r_max);
inline constexpr std::size_t kMaxTableDegree = 20000;

struct SandwichRow {
  double r;
  double log_v;
  double log_vm;
  double gap;
};

/// (r, log v, log v_M, log v_M - log v) over the grid.
std::vector<SandwichRow> sandwich_report(const RadialWeight& v, std::span<const double> grid,
                                         std::size_t max_degree);
std::vector<SandwichRow> sandwich_report(const MonomialNormTable& table, std::span<const double> grid);

}  // namespace vfock
