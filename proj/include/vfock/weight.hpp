#pragma once

// Radial weights v(r) on [0, inf), the growth function phi = 1/w, and the
// grid-based checks for the hypotheses the Volterra criteria rely on.
//
// Every evaluation is done in the log domain: a weight is represented by its
// exponent psi = -log v, so that v = exp(-psi). phi = exp(psi) is never
// exponentiated.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vfock {

enum class WeightFamily { ExpPower, ExpPowerLog, LogPower, HardyGrowthReciprocal, Custom };

const char* to_string(WeightFamily family);

/// v(r) = exp(-alpha r^p)
struct ExpPowerParams {
  double alpha;
  double p;
};

/// v(r) = exp(-alpha r^p + beta (log r)^q), r >= 2
struct ExpPowerLogParams {
  double alpha;
  double p;
  double beta;
  double q;
};

/// v(r) = exp(-(log r)^p), r >= 2
struct LogPowerParams {
  double p;
};

/// v(r) = 1 / (r^a (log r)^b exp(c r^d + k (log r)^m)), r >= 2
struct HardyParams {
  double a;
  double b;
  double c;
  double d;
  double k;
  double m;
};

using WeightParams = std::variant<ExpPowerParams, ExpPowerLogParams, LogPowerParams, HardyParams>;

class RadialWeight {
 public:
  /// Validates parameter ranges and throws ParameterError naming the violated
  /// constraint. Families defined only for r >= 2 default to patch radius 2;
  /// below the patch radius the weight is the constant v(patch_radius).
  static RadialWeight make(const WeightParams& params, std::optional<double> patch_radius = {});

  static RadialWeight exp_power(double alpha, double p) { return make(ExpPowerParams{alpha, p}); }
  static RadialWeight log_power(double p) { return make(LogPowerParams{p}); }

  /// A weight known only through its log-value. Admitted to norm
  /// computations; rejected by every check that needs derivatives.
  static RadialWeight custom(std::string name, std::function<double(double)> log_value);

  WeightFamily family() const { return family_; }
  const std::optional<WeightParams>& params() const { return params_; }
  double patch_radius() const { return patch_radius_; }
  const std::string& name() const { return name_; }
  bool has_derivatives() const { return family_ != WeightFamily::Custom; }

  double log_value(double r) const;
  /// log v(e^t); stays finite for t far beyond where e^t overflows for the
  /// log-type families.
  double log_value_at_log_r(double t) const;

  // psi = -log v and its derivatives (zero below the patch radius).
  // Throw UnsupportedFamilyError for custom weights.
  double psi(double r) const;
  double psi_prime(double r) const;
  double psi_second(double r) const;

  /// log |v'(r)|
  double log_abs_derivative(double r) const;
  /// v''(r) v(r) / v'(r)^2
  double curvature_ratio(double r) const;

  /// The weight r -> v(lambda r).
  RadialWeight dilated(double lambda) const;

  bool same_as(const RadialWeight& other) const;

 private:
  RadialWeight() = default;
  void require_derivatives(const char* what) const;

  WeightFamily family_ = WeightFamily::Custom;
  std::optional<WeightParams> params_;
  double patch_radius_ = 0.0;
  std::string name_;
  std::function<double(double)> custom_log_;
};

/// Growth function phi = 1/w for a closed-form weight w, with phi' and phi''
/// coded analytically from the weight exponent.
class GrowthFunction {
 public:
  /// Throws UnsupportedFamilyError for custom weights.
  static GrowthFunction from_weight(const RadialWeight& w);

  double log_phi(double r) const { return w_.psi(r); }
  double log_phi_prime(double r) const;
  /// phi''(r) / phi'(r)
  double phi_second_over_prime(double r) const;
  /// phi''(r) phi(r) / phi'(r)^2
  double kp_ratio(double r) const;

  /// Cut radius: smallest point of the coarse grid 1, 2, 3, ... with
  /// phi'(r) >= 1 and phi' non-decreasing there.
  double r_phi() const { return r_phi_; }

  /// The weight w_phi = 1/phi.
  const RadialWeight& weight() const { return w_; }

 private:
  explicit GrowthFunction(RadialWeight w) : w_(std::move(w)) {}
  RadialWeight w_;
  double r_phi_ = 1.0;
};

/// u_phi(r) = 1 / phi'(r_phi) for r <= r_phi and 1 / phi'(r) beyond.
RadialWeight derived_weight_u(const GrowthFunction& phi);

/// Exponent psi with v = exp(-psi), as used by the essentialness check.
struct ExponentFunction {
  std::function<double(double)> psi;
  std::function<double(double)> psi_prime;
  std::function<double(double)> psi_second;
  double domain_start = 0.0;

  static ExponentFunction from_weight(const RadialWeight& v);
};

struct ConditionReport {
  std::string name;
  bool passed = false;
  std::vector<std::pair<double, double>> witness;
  double sup_or_lim_estimate = 0.0;
  std::string notes;
  std::optional<double> onset_radius;
  std::vector<ConditionReport> subchecks;
};

/// Positivity, monotonicity (1e-12 relative) and rapid decay of r^n v(r) for
/// n <= 10 on the grid.
ConditionReport check_weight_axioms(const RadialWeight& v, std::span<const double> grid);

/// sup of phi'' phi / phi'^2 over grid points >= r_phi.
ConditionReport check_kp_condition(const GrowthFunction& phi, std::span<const double> grid);

/// r^n = O(phi'(r)) for n <= 10: log phi'(r) - 10 log r eventually increasing.
ConditionReport check_growth_condition(const GrowthFunction& phi, std::span<const double> grid);

/// Smoothness, eventual monotonicity of |w'| r^{1+delta} and boundedness of
/// -w w'' / w'^2 (the two-weight Volterra hypotheses), plus the identity
/// 2 - w''w/w'^2 = phi''phi/phi'^2 and the bound w(r) <= C |w'(r)| r.
ConditionReport check_two_weight_conditions(const RadialWeight& w, double delta,
                                            std::span<const double> grid);

/// Sufficient conditions for v = exp(-psi) to be essential.
ConditionReport check_essentialness(const ExponentFunction& psi, std::span<const double> grid);

// Default grids used when a caller does not supply one.
std::vector<double> default_axiom_grid();
std::vector<double> default_condition_grid(double r_start);

// Sub-check names reported by check_essentialness.
inline constexpr const char* kEssentialGrowth = "r_psi_prime_unbounded";
inline constexpr const char* kEssentialCurvature = "psi_second_below_psi_prime_squared";
inline constexpr const char* kEssentialLowerBound = "psi_prime_plus_r_psi_second_above_c_over_r";

}  // namespace vfock
