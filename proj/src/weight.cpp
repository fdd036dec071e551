#include "vfock/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vfock/errors.hpp"
#include "vfock/numeric.hpp"

namespace vfock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

void validate(const WeightParams& params) {
  std::visit(Overloaded{
                 [](const ExpPowerParams& e) {
                   if (!finite_all({e.alpha, e.p})) throw ParameterError("exp_power: parameters must be finite");
                   if (!(e.alpha > 0.0)) throw ParameterError("exp_power: alpha > 0 required");
                   if (!(e.p > 0.0)) throw ParameterError("exp_power: p > 0 required");
                 },
                 [](const ExpPowerLogParams& e) {
                   if (!finite_all({e.alpha, e.p, e.beta, e.q}))
                     throw ParameterError("exp_power_log: parameters must be finite");
                   if (!(e.alpha > 0.0)) throw ParameterError("exp_power_log: alpha > 0 required");
                   if (!(e.p > 0.0)) throw ParameterError("exp_power_log: p > 0 required");
                   if (!(e.q > 0.0)) throw ParameterError("exp_power_log: q > 0 required");
                 },
                 [](const LogPowerParams& e) {
                   if (!std::isfinite(e.p)) throw ParameterError("log_power: p must be finite");
                   if (!(e.p > 1.0)) throw ParameterError("log_power: p > 1 required");
                 },
                 [](const HardyParams& h) {
                   if (!finite_all({h.a, h.b, h.c, h.d, h.k, h.m}))
                     throw ParameterError("hardy: parameters must be finite");
                   const bool power_branch = h.c > 0.0 && h.d > 0.0;
                   const bool log_branch = h.c == 0.0 && h.k > 0.0 && h.m > 1.0;
                   if (!power_branch && !log_branch) {
                     throw ParameterError("hardy: requires (c > 0 and d > 0) or (c = 0, k > 0 and m > 1)");
                   }
                 },
             },
             params);
}

struct Derivs {
  double psi;
  double d1;
  double d2;
};

// psi and derivatives for the closed-form part (r at or beyond the patch radius).
Derivs family_derivs(const WeightParams& params, double r) {
  return std::visit(
      Overloaded{
          [r](const ExpPowerParams& e) {
            const double rp = std::pow(r, e.p);
            return Derivs{e.alpha * rp, e.alpha * e.p * std::pow(r, e.p - 1.0),
                          e.alpha * e.p * (e.p - 1.0) * std::pow(r, e.p - 2.0)};
          },
          [r](const ExpPowerLogParams& e) {
            const double L = std::log(r);
            const double Lq1 = std::pow(L, e.q - 1.0);
            const double Lq2 = std::pow(L, e.q - 2.0);
            return Derivs{
                e.alpha * std::pow(r, e.p) - e.beta * std::pow(L, e.q),
                e.alpha * e.p * std::pow(r, e.p - 1.0) - e.beta * e.q * Lq1 / r,
                e.alpha * e.p * (e.p - 1.0) * std::pow(r, e.p - 2.0) -
                    e.beta * e.q * ((e.q - 1.0) * Lq2 - Lq1) / (r * r)};
          },
          [r](const LogPowerParams& e) {
            const double L = std::log(r);
            const double Lp1 = std::pow(L, e.p - 1.0);
            return Derivs{std::pow(L, e.p), e.p * Lp1 / r,
                          e.p * ((e.p - 1.0) * std::pow(L, e.p - 2.0) - Lp1) / (r * r)};
          },
          [r](const HardyParams& h) {
            const double L = std::log(r);
            double psi = h.a * L + h.c * std::pow(r, h.d);
            double d1 = h.a / r + h.c * h.d * std::pow(r, h.d - 1.0);
            double d2 = -h.a / (r * r) + h.c * h.d * (h.d - 1.0) * std::pow(r, h.d - 2.0);
            if (h.b != 0.0) {
              psi += h.b * std::log(L);
              d1 += h.b / (r * L);
              d2 -= h.b * (L + 1.0) / ((r * L) * (r * L));
            }
            if (h.k != 0.0) {
              const double Lm1 = std::pow(L, h.m - 1.0);
              psi += h.k * std::pow(L, h.m);
              d1 += h.k * h.m * Lm1 / r;
              d2 += h.k * h.m * ((h.m - 1.0) * std::pow(L, h.m - 2.0) - Lm1) / (r * r);
            }
            return Derivs{psi, d1, d2};
          },
      },
      params);
}

// psi as a function of t = log r, for t beyond log(patch radius).
double family_psi_at_log_r(const WeightParams& params, double t) {
  return std::visit(Overloaded{
                        [t](const ExpPowerParams& e) { return e.alpha * std::exp(e.p * t); },
                        [t](const ExpPowerLogParams& e) {
                          return e.alpha * std::exp(e.p * t) - e.beta * std::pow(t, e.q);
                        },
                        [t](const LogPowerParams& e) { return std::pow(t, e.p); },
                        [t](const HardyParams& h) {
                          double psi = h.a * t + h.c * std::exp(h.d * t);
                          if (h.b != 0.0) psi += h.b * std::log(t);
                          if (h.k != 0.0) psi += h.k * std::pow(t, h.m);
                          return psi;
                        },
                    },
                    params);
}

std::string describe(const WeightParams& params) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const ExpPowerParams& e) { os << "exp_power(alpha=" << e.alpha << ", p=" << e.p << ")"; },
                 [&](const ExpPowerLogParams& e) {
                   os << "exp_power_log(alpha=" << e.alpha << ", p=" << e.p << ", beta=" << e.beta
                      << ", q=" << e.q << ")";
                 },
                 [&](const LogPowerParams& e) { os << "log_power(p=" << e.p << ")"; },
                 [&](const HardyParams& h) {
                   os << "hardy(a=" << h.a << ", b=" << h.b << ", c=" << h.c << ", d=" << h.d
                      << ", k=" << h.k << ", m=" << h.m << ")";
                 },
             },
             params);
  return os.str();
}

WeightFamily family_of(const WeightParams& params) {
  switch (params.index()) {
    case 0: return WeightFamily::ExpPower;
    case 1: return WeightFamily::ExpPowerLog;
    case 2: return WeightFamily::LogPower;
    default: return WeightFamily::HardyGrowthReciprocal;
  }
}

bool params_equal(const WeightParams& a, const WeightParams& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const ExpPowerParams& x) {
            const auto& y = std::get<ExpPowerParams>(b);
            return x.alpha == y.alpha && x.p == y.p;
          },
          [&](const ExpPowerLogParams& x) {
            const auto& y = std::get<ExpPowerLogParams>(b);
            return x.alpha == y.alpha && x.p == y.p && x.beta == y.beta && x.q == y.q;
          },
          [&](const LogPowerParams& x) { return x.p == std::get<LogPowerParams>(b).p; },
          [&](const HardyParams& x) {
            const auto& y = std::get<HardyParams>(b);
            return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.k == y.k && x.m == y.m;
          },
      },
      a);
}

}  // namespace

const char* to_string(WeightFamily family) {
  switch (family) {
    case WeightFamily::ExpPower: return "exp_power";
    case WeightFamily::ExpPowerLog: return "exp_power_log";
    case WeightFamily::LogPower: return "log_power";
    case WeightFamily::HardyGrowthReciprocal: return "hardy";
    case WeightFamily::Custom: return "custom";
  }
  return "unknown";
}

RadialWeight RadialWeight::make(const WeightParams& params, std::optional<double> patch_radius) {
  validate(params);
  RadialWeight w;
  w.family_ = family_of(params);
  w.params_ = params;
  const double default_patch = w.family_ == WeightFamily::ExpPower ? 0.0 : 2.0;
  w.patch_radius_ = patch_radius.value_or(default_patch);
  if (!std::isfinite(w.patch_radius_) || w.patch_radius_ < 0.0) {
    throw ParameterError("patch_radius must be finite and >= 0");
  }
  if (w.family_ != WeightFamily::ExpPower && !(w.patch_radius_ > 1.0)) {
    throw ParameterError("patch_radius > 1 required for families involving log r");
  }
  w.name_ = describe(params);
  return w;
}

RadialWeight RadialWeight::custom(std::string name, std::function<double(double)> log_value) {
  if (!log_value) throw ParameterError("custom weight needs a log-value function");
  RadialWeight w;
  w.family_ = WeightFamily::Custom;
  w.name_ = std::move(name);
  w.custom_log_ = std::move(log_value);
  return w;
}

double RadialWeight::log_value(double r) const {
  if (family_ == WeightFamily::Custom) return custom_log_(r);
  return -psi(r);
}

double RadialWeight::log_value_at_log_r(double t) const {
  if (family_ == WeightFamily::Custom) return custom_log_(std::exp(t));
  if (patch_radius_ > 0.0 && t < std::log(patch_radius_)) return -psi(patch_radius_);
  return -family_psi_at_log_r(*params_, t);
}

void RadialWeight::require_derivatives(const char* what) const {
  if (!has_derivatives()) {
    throw UnsupportedFamilyError(std::string(what) + " needs a closed-form weight; '" + name_ +
                                 "' is custom");
  }
}

double RadialWeight::psi(double r) const {
  if (family_ == WeightFamily::Custom) return -custom_log_(r);
  return family_derivs(*params_, std::max(r, patch_radius_)).psi;
}

double RadialWeight::psi_prime(double r) const {
  require_derivatives("psi'");
  if (r < patch_radius_) return 0.0;
  return family_derivs(*params_, r).d1;
}

double RadialWeight::psi_second(double r) const {
  require_derivatives("psi''");
  if (r < patch_radius_) return 0.0;
  return family_derivs(*params_, r).d2;
}

double RadialWeight::log_abs_derivative(double r) const {
  require_derivatives("w'");
  const double d1 = psi_prime(r);
  if (!(d1 > 0.0)) return d1 == 0.0 ? -kInf : std::log(-d1) - psi(r);
  return std::log(d1) - psi(r);
}

double RadialWeight::curvature_ratio(double r) const {
  require_derivatives("w''");
  const double d1 = psi_prime(r);
  return 1.0 - psi_second(r) / (d1 * d1);
}

RadialWeight RadialWeight::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw ParameterError("dilation factor must be > 0");
  if (family_ == WeightFamily::ExpPower) {
    const auto& e = std::get<ExpPowerParams>(*params_);
    return make(ExpPowerParams{e.alpha * std::pow(lambda, e.p), e.p});
  }
  RadialWeight base = *this;
  return custom(name_ + " dilated", [base, lambda](double r) { return base.log_value(lambda * r); });
}

bool RadialWeight::same_as(const RadialWeight& other) const {
  if (family_ == WeightFamily::Custom || other.family_ == WeightFamily::Custom) return false;
  return params_equal(*params_, *other.params_) && patch_radius_ == other.patch_radius_;
}

GrowthFunction GrowthFunction::from_weight(const RadialWeight& w) {
  if (!w.has_derivatives()) {
    throw UnsupportedFamilyError("growth function needs a closed-form weight; '" + w.name() +
                                 "' is custom");
  }
  GrowthFunction g(w);
  constexpr int kCoarseLimit = 1000000;
  for (int k = 1; k <= kCoarseLimit; ++k) {
    const double r = static_cast<double>(k);
    if (g.log_phi_prime(r) >= 0.0 && g.phi_second_over_prime(r) >= 0.0) {
      g.r_phi_ = r;
      return g;
    }
  }
  throw DomainCoverageError("no cut radius with phi' >= 1 below r = 1e6 for " + w.name());
}

double GrowthFunction::log_phi_prime(double r) const {
  const double d1 = w_.psi_prime(r);
  if (!(d1 > 0.0)) return -kInf;
  return w_.psi(r) + std::log(d1);
}

double GrowthFunction::phi_second_over_prime(double r) const {
  const double d1 = w_.psi_prime(r);
  return w_.psi_second(r) / d1 + d1;
}

double GrowthFunction::kp_ratio(double r) const { return phi_second_over_prime(r) / w_.psi_prime(r); }

RadialWeight derived_weight_u(const GrowthFunction& phi) {
  const double r_phi = phi.r_phi();
  const double floor_log = phi.log_phi_prime(r_phi);
  return RadialWeight::custom("u_phi[" + phi.weight().name() + "]",
                              [phi, r_phi, floor_log](double r) {
                                if (r <= r_phi) return -floor_log;
                                return -std::max(floor_log, phi.log_phi_prime(r));
                              });
}

ExponentFunction ExponentFunction::from_weight(const RadialWeight& v) {
  if (!v.has_derivatives()) {
    throw UnsupportedFamilyError("exponent function needs a closed-form weight; '" + v.name() +
                                 "' is custom");
  }
  ExponentFunction e;
  e.psi = [v](double r) { return v.psi(r); };
  e.psi_prime = [v](double r) { return v.psi_prime(r); };
  e.psi_second = [v](double r) { return v.psi_second(r); };
  e.domain_start = v.patch_radius();
  return e;
}

std::vector<double> default_axiom_grid() { return log_grid(1e-2, 1e3, 200); }

std::vector<double> default_condition_grid(double r_start) {
  const double a = std::max(r_start, 1e-2);
  return log_grid(a, std::max(1e4, 100.0 * a), 200);
}

}  // namespace vfock
