#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "vfock/vfock.h"

extern "C" int vfock_c_smoke(void);

namespace {

struct WeightHandle {
  vf_weight* p = nullptr;
  ~WeightHandle() { vf_weight_free(p); }
};
struct PolyHandle {
  vf_poly* p = nullptr;
  ~PolyHandle() { vf_poly_free(p); }
};
struct RunHandle {
  vf_run* p = nullptr;
  ~RunHandle() { vf_run_free(p); }
};

}  // namespace

TEST_CASE("header compiles and links from C") { CHECK(vfock_c_smoke() == 0); }

TEST_CASE("status names and version") {
  CHECK(std::string(vf_version()) == "1.0.0");
  CHECK(std::string(vf_status_name(VF_OK)) == "ok");
  CHECK(std::string(vf_status_name(VF_E_PRECONDITION)) == "precondition");
  CHECK(std::string(vf_verdict_name(VF_COMPACT)) == "Compact");
}

TEST_CASE("weights through the C API") {
  WeightHandle w;
  REQUIRE(vf_weight_from_json(R"({"family":"exp_power","alpha":1,"p":2})", &w.p) == VF_OK);
  double lv = 0;
  CHECK(vf_weight_log_value(w.p, 1.0, &lv) == VF_OK);
  CHECK(lv == doctest::Approx(-1.0));

  int passed = 0;
  char* report = nullptr;
  CHECK(vf_weight_check(w.p, "essentialness", &passed, &report) == VF_OK);
  CHECK(passed == 1);
  REQUIRE(report != nullptr);
  CHECK(std::strstr(report, "\"essentialness\"") != nullptr);
  vf_string_free(report);
  CHECK(vf_weight_check(w.p, "kp", &passed, nullptr) == VF_OK);
  CHECK(passed == 1);
  CHECK(vf_weight_check(w.p, "bogus", &passed, nullptr) == VF_E_CONFIG);

  vf_growth* g = nullptr;
  REQUIRE(vf_growth_from_weight(w.p, &g) == VF_OK);
  double r_phi = 0;
  double lp = 0;
  double kp = 0;
  double lu = 0;
  CHECK(vf_growth_r_phi(g, &r_phi) == VF_OK);
  CHECK(r_phi == 1.0);
  CHECK(vf_growth_log_phi_prime(g, 2.0, &lp) == VF_OK);
  CHECK(lp == doctest::Approx(std::log(4.0) + 4.0));
  CHECK(vf_growth_kp_ratio(g, 10.0, &kp) == VF_OK);
  CHECK(kp == doctest::Approx(1.005));
  CHECK(vf_growth_log_u(g, 0.5, &lu) == VF_OK);
  CHECK(lu == doctest::Approx(-std::log(2.0) - 1.0));
  vf_growth_free(g);
}

TEST_CASE("errors carry a status and a message") {
  vf_weight* w = nullptr;
  CHECK(vf_weight_from_json(R"({"family":"exp_power","alpha":-1,"p":2})", &w) == VF_E_PARAMETER);
  CHECK(w == nullptr);
  CHECK(std::string(vf_last_error()).find("alpha") != std::string::npos);
  CHECK(vf_weight_from_json("{not json", &w) == VF_E_CONFIG);
  CHECK(vf_weight_from_json(R"({"family":"exp_power"})", &w) == VF_E_CONFIG);
  CHECK(vf_weight_from_json(nullptr, &w) == VF_E_INVALID_ARGUMENT);
  CHECK(vf_weight_log_value(nullptr, 1.0, nullptr) == VF_E_INVALID_ARGUMENT);
  vf_verdict v;
  CHECK(vf_oracle_exp_power(1.0, 0.5, 1, &v) == VF_E_PARTIAL_ORACLE);
}

TEST_CASE("polynomials through the C API") {
  const double re[] = {0, 0, 1};
  PolyHandle g;
  REQUIRE(vf_poly_from_coeffs(re, nullptr, 3, &g.p) == VF_OK);
  long deg = 0;
  CHECK(vf_poly_degree(g.p, &deg) == VF_OK);
  CHECK(deg == 2);
  double major = 0;
  CHECK(vf_poly_log_majorant(g.p, 10.0, &major) == VF_OK);
  CHECK(major == doctest::Approx(std::log(100.0)));
  double yr = 0;
  double yi = 0;
  CHECK(vf_poly_evaluate(g.p, 0.0, 2.0, &yr, &yi) == VF_OK);
  CHECK(yr == -4.0);
  CHECK(yi == 0.0);

  PolyHandle f;
  REQUIRE(vf_poly_from_json(R"({"coeffs":[[0,0],[1,0]]})", &f.p) == VF_OK);
  PolyHandle vg;
  REQUIRE(vf_poly_volterra(g.p, f.p, 8, &vg.p) == VF_OK);
  double cr = 0;
  double ci = 0;
  CHECK(vf_poly_coeff(vg.p, 3, &cr, &ci) == VF_OK);
  CHECK(cr == doctest::Approx(2.0 / 3.0));

  PolyHandle d;
  REQUIRE(vf_poly_differentiate(g.p, &d.p) == VF_OK);
  PolyHandle j;
  REQUIRE(vf_poly_integrate(d.p, &j.p) == VF_OK);
  CHECK(vf_poly_coeff(j.p, 2, &cr, &ci) == VF_OK);
  CHECK(cr == 1.0);

  WeightHandle w;
  REQUIRE(vf_weight_from_json(R"({"family":"exp_power","alpha":1,"p":2})", &w.p) == VF_OK);
  double ln = 0;
  double arg = 0;
  CHECK(vf_poly_weighted_norm_log(g.p, w.p, 50.0, &ln, &arg) == VF_OK);
  CHECK(ln == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(arg == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(vf_monomial_norm_log(w.p, 2, &ln) == VF_OK);
  CHECK(ln == doctest::Approx(-1.0));
  CHECK(vf_assoc_upper_log(w.p, 10, 1.0, &ln) == VF_OK);
  CHECK(ln == doctest::Approx(-1.0));

  vf_verdict verdict;
  char* js = nullptr;
  CHECK(vf_classify_volterra(w.p, w.p, g.p, &verdict, &js) == VF_OK);
  CHECK(verdict == VF_BOUNDED);
  REQUIRE(js);
  CHECK(std::strstr(js, "\"Bounded\"") != nullptr);
  vf_string_free(js);

  const double bad[] = {NAN};
  vf_poly* p = nullptr;
  CHECK(vf_poly_from_coeffs(bad, nullptr, 1, &p) == VF_E_PARAMETER);
}

TEST_CASE("command runners") {
  RunHandle run;
  REQUIRE(vf_cmd_classify(R"({"weight":{"family":"exp_power","alpha":1,"p":2},"symbol":{"coeffs":[[0,0],[1,0]]}})",
                          "volterra", &run.p) == VF_OK);
  CHECK(vf_run_exit_code(run.p) == 0);
  REQUIRE(vf_run_artifact_count(run.p) == 2);
  CHECK(std::string(vf_run_artifact_name(run.p, 0)) == "classification.json");
  CHECK(std::strstr(vf_run_artifact_content(run.p, 0), "Compact") != nullptr);
  CHECK(vf_run_artifact_name(run.p, 5) == nullptr);

  RunHandle bad;
  REQUIRE(vf_cmd_weight_check(R"({"weight":{"family":"exp_power","alpha":-1,"p":2}})", &bad.p) == VF_OK);
  CHECK(vf_run_exit_code(bad.p) == 2);
  CHECK(vf_run_artifact_count(bad.p) == 0);

  RunHandle table;
  const double ps[] = {2.0};
  REQUIRE(vf_cmd_corollary_table(1.0, ps, 1, 4, nullptr, &table.p) == VF_OK);
  CHECK(vf_run_exit_code(table.p) == 0);

  RunHandle lp;
  REQUIRE(vf_cmd_lp_check(R"({"samples":3})", &lp.p) == VF_OK);
  CHECK(vf_run_exit_code(lp.p) == 0);
  CHECK(vf_run_artifact_count(lp.p) == 2);

  vf_run* r = nullptr;
  CHECK(vf_cmd_lp_check("{oops", &r) == VF_E_CONFIG);
  CHECK(r == nullptr);
}
