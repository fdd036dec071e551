#pragma once

// Criterion ratios q(r) for V_g and M_h, the slope-based verdict rule, the
// exact polynomial-degree rule for exponential weights, and the full
// classification pipeline.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vfock/entire.hpp"
#include "vfock/errors.hpp"
#include "vfock/weight.hpp"

namespace vfock {

enum class Verdict { Unbounded, Bounded, Compact };
enum class CurveForm { PhiForm, TwoWeightForm, MultForm };
/// Which stand-in for the associated weight a curve used: v itself, or the
/// monomial envelope v_M >= v~.
enum class ProxyKind { Weight, Envelope };

const char* to_string(Verdict v);
const char* to_string(CurveForm f);
const char* to_string(ProxyKind p);

struct CriterionCurve {
  CurveForm form = CurveForm::PhiForm;
  std::vector<std::pair<double, double>> samples;  // (r, log q(r)), sorted by r
  double r_start = 0.0;
  /// The operator is zero (constant g for V_g, h = 0 for M_h).
  bool vanishing = false;
};

/// Tails whose residual range around the fitted line stays below this (in
/// log q) are never reported as oscillating.
inline constexpr double kOscillationAmplitude = 0.1;

struct ClassifyOptions {
  double slope_tol = 0.05;
  double tail_fraction = 0.5;
};

struct Classification {
  Verdict verdict = Verdict::Bounded;
  double slope = 0.0;
  double tail_value = 0.0;
  std::string weak_compact_note;
  CriterionCurve evidence;
  ProxyKind proxy = ProxyKind::Weight;
  std::vector<std::string> warnings;
};

/// The tail of the curve oscillates; carries the curve for diagnostics.
class InconclusiveError : public Error {
 public:
  InconclusiveError(const std::string& what, CriterionCurve curve)
      : Error(ErrorKind::Inconclusive, what), curve(std::move(curve)) {}
  CriterionCurve curve;
};

using LogWeightFn = std::function<double(double)>;

/// log q = log M~(g', r) - log phi'(r) - log proxy(r), for grid points >= r_phi.
CriterionCurve criterion_curve_phi(const LogWeightFn& proxy_log, const GrowthFunction& phi,
                                   const TaylorPolynomial& g, std::span<const double> grid);

/// log q = 2 log w + log M~(g', r) - log |w'| - log proxy, for grid points >= r_start.
CriterionCurve criterion_curve_two_weight(const LogWeightFn& proxy_log, const RadialWeight& w,
                                          const TaylorPolynomial& g, std::span<const double> grid,
                                          double r_start = 0.0);

/// log q = log w + log M~(h, r) - log proxy.
CriterionCurve criterion_curve_mult(const LogWeightFn& proxy_log, const RadialWeight& w,
                                    const TaylorPolynomial& h, std::span<const double> grid);

/// Least-squares slope s of log q against log r over the tail:
///   s > slope_tol                          -> Unbounded
///   s < -slope_tol, or |s| <= slope_tol and
///   log q drops by >= 2 across the tail    -> Compact
///   otherwise                              -> Bounded
/// Needs >= 16 samples spanning a decade. Throws InconclusiveError when the
/// discrete slope changes sign more than 3 times in the tail.
Classification classify(const CriterionCurve& curve, const ClassifyOptions& opts = {});

/// Exact verdict for V_g on H_v with v = w = exp(-alpha r^p) and g a
/// polynomial of degree deg (deg <= 0: constant symbol, V_g = 0).
/// Compact iff deg < p or deg = 0; bounded iff deg <= floor(p), stated for
/// p >= 1 only: a non-compact query with p < 1 throws PartialOracleError.
Verdict oracle_exp_power(double alpha, double p, long deg);

struct VolterraOptions {
  ClassifyOptions classify;
  std::optional<double> r_min;
  double r_max = 50.0;
  std::size_t grid_points = 64;
  double delta = 0.5;
  /// Cross-check against oracle_exp_power when v = w is an ExpPower weight.
  bool symbol_is_polynomial = true;
  std::optional<ProxyKind> force_proxy;
  std::size_t table_degree = 0;  // 0: default_table_degree
};

/// Full pipeline for V_g : H_v -> H_w. Throws PreconditionError when a weight
/// hypothesis fails, ConsistencyError when the numeric verdict contradicts
/// oracle_exp_power.
Classification classify_volterra(const RadialWeight& v, const RadialWeight& w,
                                 const TaylorPolynomial& g, const VolterraOptions& opts = {});

/// Pipeline for M_h : H_v -> H_w.
Classification classify_multiplication(const RadialWeight& v, const RadialWeight& w,
                                       const TaylorPolynomial& h, const VolterraOptions& opts = {});

/// (||f'||_{u_phi} / ||f||_{w_phi}, ||f||_{w_phi} / (|f(0)| + ||f'||_{u_phi})).
std::pair<double, double> lp_ratio(const GrowthFunction& phi, const TaylorPolynomial& f,
                                   std::span<const double> grid);

inline constexpr const char* kInterpolationNote =
    "equivalent to compactness under interpolation hypothesis";

}  // namespace vfock
