#include "vfock/vfock.h"

#include <cstring>
#include <memory>
#include <string>

#include "vfock/assoc.hpp"
#include "vfock/classifier.hpp"
#include "vfock/commands.hpp"
#include "vfock/errors.hpp"
#include "vfock/io.hpp"

struct vf_weight {
  vfock::RadialWeight value;
};
struct vf_growth {
  vfock::GrowthFunction value;
  vfock::RadialWeight u;
};
struct vf_poly {
  vfock::TaylorPolynomial value;
};
struct vf_run {
  vfock::RunResult value;
};

namespace {

thread_local std::string g_last_error;

vf_status status_for(vfock::ErrorKind kind) {
  using vfock::ErrorKind;
  switch (kind) {
    case ErrorKind::Parameter: return VF_E_PARAMETER;
    case ErrorKind::UnsupportedFamily: return VF_E_UNSUPPORTED_FAMILY;
    case ErrorKind::DomainCoverage: return VF_E_DOMAIN_COVERAGE;
    case ErrorKind::Inconclusive: return VF_E_INCONCLUSIVE;
    case ErrorKind::Precondition: return VF_E_PRECONDITION;
    case ErrorKind::Consistency: return VF_E_CONSISTENCY;
    case ErrorKind::PartialOracle: return VF_E_PARTIAL_ORACLE;
    case ErrorKind::Config: return VF_E_CONFIG;
  }
  return VF_E_INTERNAL;
}

vf_status fail(vf_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

template <class F>
vf_status guard(F&& f) {
  try {
    f();
    return VF_OK;
  } catch (const vfock::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(VF_E_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(VF_E_INTERNAL, e.what());
  } catch (...) {
    return fail(VF_E_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  auto* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

vfock::Json parse_or_empty(const char* json) {
  if (json == nullptr || *json == '\0') return vfock::Json::object();
  return vfock::Json::parse(json);
}

#define VF_REQUIRE(cond)                                                  \
  do {                                                                    \
    if (!(cond)) return fail(VF_E_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* vf_version(void) { return "1.0.0"; }
const char* vf_last_error(void) { return g_last_error.c_str(); }

const char* vf_status_name(vf_status status) {
  switch (status) {
    case VF_OK: return "ok";
    case VF_E_INVALID_ARGUMENT: return "invalid_argument";
    case VF_E_PARAMETER: return "parameter";
    case VF_E_UNSUPPORTED_FAMILY: return "unsupported_family";
    case VF_E_DOMAIN_COVERAGE: return "domain_coverage";
    case VF_E_INCONCLUSIVE: return "inconclusive";
    case VF_E_PRECONDITION: return "precondition";
    case VF_E_CONSISTENCY: return "consistency";
    case VF_E_PARTIAL_ORACLE: return "partial_oracle";
    case VF_E_CONFIG: return "config";
    case VF_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* vf_verdict_name(vf_verdict verdict) {
  switch (verdict) {
    case VF_UNBOUNDED: return "Unbounded";
    case VF_BOUNDED: return "Bounded";
    case VF_COMPACT: return "Compact";
  }
  return "unknown";
}

vf_status vf_weight_from_json(const char* json, vf_weight** out) {
  VF_REQUIRE(json && out);
  return guard([&] { *out = new vf_weight{vfock::parse_weight(vfock::Json::parse(json))}; });
}

void vf_weight_free(vf_weight* w) { delete w; }

vf_status vf_weight_log_value(const vf_weight* w, double r, double* out) {
  VF_REQUIRE(w && out);
  return guard([&] { *out = w->value.log_value(r); });
}

vf_status vf_weight_check(const vf_weight* w, const char* check, int* passed, char** report_json) {
  VF_REQUIRE(w && check && passed);
  return guard([&] {
    const std::string name = check;
    vfock::ConditionReport rep;
    if (name == "axioms") {
      rep = vfock::check_weight_axioms(w->value, vfock::default_axiom_grid());
    } else if (name == "kp") {
      const auto phi = vfock::GrowthFunction::from_weight(w->value);
      rep = vfock::check_kp_condition(phi, vfock::default_condition_grid(phi.r_phi()));
    } else if (name == "two_weight") {
      rep = vfock::check_two_weight_conditions(w->value, 0.5,
                                               vfock::default_condition_grid(w->value.patch_radius()));
    } else if (name == "essentialness") {
      rep = vfock::check_essentialness(vfock::ExponentFunction::from_weight(w->value),
                                       vfock::default_condition_grid(w->value.patch_radius()));
    } else {
      throw vfock::ConfigError("unknown check '" + name + "'");
    }
    *passed = rep.passed ? 1 : 0;
    if (report_json) *report_json = dup_string(vfock::dump_json(vfock::to_json(rep)));
  });
}

vf_status vf_growth_from_weight(const vf_weight* w, vf_growth** out) {
  VF_REQUIRE(w && out);
  return guard([&] {
    auto phi = vfock::GrowthFunction::from_weight(w->value);
    auto u = vfock::derived_weight_u(phi);
    *out = new vf_growth{std::move(phi), std::move(u)};
  });
}

void vf_growth_free(vf_growth* g) { delete g; }

vf_status vf_growth_r_phi(const vf_growth* g, double* out) {
  VF_REQUIRE(g && out);
  *out = g->value.r_phi();
  return VF_OK;
}

vf_status vf_growth_log_phi_prime(const vf_growth* g, double r, double* out) {
  VF_REQUIRE(g && out);
  return guard([&] { *out = g->value.log_phi_prime(r); });
}

vf_status vf_growth_kp_ratio(const vf_growth* g, double r, double* out) {
  VF_REQUIRE(g && out);
  return guard([&] { *out = g->value.kp_ratio(r); });
}

vf_status vf_growth_log_u(const vf_growth* g, double r, double* out) {
  VF_REQUIRE(g && out);
  return guard([&] { *out = g->u.log_value(r); });
}

vf_status vf_poly_from_coeffs(const double* re, const double* im, size_t count, vf_poly** out) {
  VF_REQUIRE(re && out);
  return guard([&] {
    std::vector<vfock::Complex> c(count);
    for (size_t i = 0; i < count; ++i) c[i] = {re[i], im ? im[i] : 0.0};
    *out = new vf_poly{vfock::TaylorPolynomial(std::move(c))};
  });
}

vf_status vf_poly_from_json(const char* json, vf_poly** out) {
  VF_REQUIRE(json && out);
  return guard([&] { *out = new vf_poly{vfock::parse_symbol(vfock::Json::parse(json), 128).poly}; });
}

void vf_poly_free(vf_poly* p) { delete p; }

vf_status vf_poly_degree(const vf_poly* p, long* out) {
  VF_REQUIRE(p && out);
  *out = p->value.degree();
  return VF_OK;
}

vf_status vf_poly_coeff(const vf_poly* p, size_t n, double* re, double* im) {
  VF_REQUIRE(p && re && im);
  const auto c = p->value.coeff(n);
  *re = c.real();
  *im = c.imag();
  return VF_OK;
}

vf_status vf_poly_evaluate(const vf_poly* p, double re, double im, double* out_re, double* out_im) {
  VF_REQUIRE(p && out_re && out_im);
  const auto v = vfock::evaluate(p->value, {re, im});
  *out_re = v.real();
  *out_im = v.imag();
  return VF_OK;
}

vf_status vf_poly_log_majorant(const vf_poly* p, double r, double* out) {
  VF_REQUIRE(p && out);
  return guard([&] { *out = vfock::log_coeff_majorant(p->value, r); });
}

vf_status vf_poly_differentiate(const vf_poly* f, vf_poly** out) {
  VF_REQUIRE(f && out);
  return guard([&] { *out = new vf_poly{vfock::differentiate(f->value)}; });
}

vf_status vf_poly_integrate(const vf_poly* f, vf_poly** out) {
  VF_REQUIRE(f && out);
  return guard([&] { *out = new vf_poly{vfock::integrate(f->value)}; });
}

vf_status vf_poly_volterra(const vf_poly* g, const vf_poly* f, size_t n_out, vf_poly** out) {
  VF_REQUIRE(g && f && out);
  return guard([&] { *out = new vf_poly{vfock::volterra(g->value, f->value, n_out)}; });
}

vf_status vf_poly_weighted_norm_log(const vf_poly* f, const vf_weight* v, double r_max, double* log_norm,
                                    double* argmax) {
  VF_REQUIRE(f && v && log_norm);
  return guard([&] {
    const auto est = vfock::weighted_norm_log(f->value, v->value, vfock::default_norm_grid(r_max));
    *log_norm = est.log_norm;
    if (argmax) *argmax = est.argmax;
  });
}

vf_status vf_monomial_norm_log(const vf_weight* v, size_t n, double* out) {
  VF_REQUIRE(v && out);
  return guard([&] { *out = vfock::monomial_norm_log(v->value, n); });
}

vf_status vf_assoc_upper_log(const vf_weight* v, size_t max_degree, double r, double* out) {
  VF_REQUIRE(v && out);
  return guard([&] { *out = vfock::assoc_upper_log(vfock::MonomialNormTable(v->value, max_degree), r); });
}

vf_status vf_oracle_exp_power(double alpha, double p, long deg, vf_verdict* out) {
  VF_REQUIRE(out);
  return guard([&] { *out = static_cast<vf_verdict>(vfock::oracle_exp_power(alpha, p, deg)); });
}

vf_status vf_classify_volterra(const vf_weight* v, const vf_weight* w, const vf_poly* g, vf_verdict* out,
                               char** classification_json) {
  VF_REQUIRE(v && w && g && out);
  return guard([&] {
    const auto c = vfock::classify_volterra(v->value, w->value, g->value);
    *out = static_cast<vf_verdict>(c.verdict);
    if (classification_json) *classification_json = dup_string(vfock::dump_json(vfock::to_json(c)));
  });
}

void vf_string_free(char* s) { delete[] s; }

vf_status vf_cmd_weight_check(const char* config_json, vf_run** out) {
  VF_REQUIRE(out);
  return guard([&] { *out = new vf_run{vfock::cmd_weight_check(parse_or_empty(config_json))}; });
}

vf_status vf_cmd_classify(const char* config_json, const char* op, vf_run** out) {
  VF_REQUIRE(op && out);
  return guard([&] { *out = new vf_run{vfock::cmd_classify(parse_or_empty(config_json), op)}; });
}

vf_status vf_cmd_corollary_table(double alpha, const double* p_values, size_t p_count, int max_deg,
                                 const char* config_json, vf_run** out) {
  VF_REQUIRE(out && (p_values || p_count == 0));
  return guard([&] {
    std::vector<double> ps(p_values, p_values + p_count);
    *out = new vf_run{vfock::cmd_corollary_table(alpha, ps, max_deg, parse_or_empty(config_json))};
  });
}

vf_status vf_cmd_lp_check(const char* config_json, vf_run** out) {
  VF_REQUIRE(out);
  return guard([&] { *out = new vf_run{vfock::cmd_lp_check(parse_or_empty(config_json))}; });
}

int vf_run_exit_code(const vf_run* run) { return run ? run->value.exit_code : vfock::kExitInternal; }
const char* vf_run_message(const vf_run* run) { return run ? run->value.message.c_str() : ""; }
size_t vf_run_artifact_count(const vf_run* run) { return run ? run->value.artifacts.size() : 0; }

const char* vf_run_artifact_name(const vf_run* run, size_t i) {
  if (!run || i >= run->value.artifacts.size()) return nullptr;
  return run->value.artifacts[i].name.c_str();
}

const char* vf_run_artifact_content(const vf_run* run, size_t i) {
  if (!run || i >= run->value.artifacts.size()) return nullptr;
  return run->value.artifacts[i].content.c_str();
}

void vf_run_free(vf_run* run) { delete run; }

}  // extern "C"
