#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "vfock/commands.hpp"
#include "vfock/errors.hpp"
#include "vfock/io.hpp"

using namespace vfock;

namespace {

std::map<std::string, std::string> by_name(const RunResult& r) {
  std::map<std::string, std::string> m;
  for (const auto& a : r.artifacts) m[a.name] = a.content;
  return m;
}

Json gauss() { return Json{{"family", "exp_power"}, {"alpha", 1.0}, {"p", 2.0}}; }

Json coeffs_of_monomial(int d) {
  Json c = Json::array();
  for (int i = 0; i < d; ++i) c.push_back(Json::array({0, 0}));
  c.push_back(Json::array({1, 0}));
  return Json{{"coeffs", c}};
}

std::vector<std::string> csv_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string cell; std::getline(is, cell, sep);) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("parse_weight") {
  const auto w = parse_weight(gauss());
  CHECK(w.family() == WeightFamily::ExpPower);
  CHECK(w.log_value(1.0) == doctest::Approx(-1.0));

  const auto h = parse_weight(Json{{"family", "hardy"}, {"a", 1}, {"b", 0}, {"c", 1}, {"d", 2}, {"k", 0}, {"m", 0},
                                   {"patch_radius", 3.0}});
  CHECK(h.family() == WeightFamily::HardyGrowthReciprocal);
  CHECK(h.patch_radius() == 3.0);
  CHECK(parse_weight(Json{{"family", "log_power"}, {"p", 2}}).family() == WeightFamily::LogPower);
  CHECK(parse_weight(Json{{"family", "exp_power_log"}, {"alpha", 1}, {"p", 2}, {"beta", 1}, {"q", 2}}).family() ==
        WeightFamily::ExpPowerLog);

  CHECK_THROWS_WITH_AS(parse_weight(Json{{"family", "exp_power"}, {"p", 2}}, "source_weight"),
                       doctest::Contains("source_weight.alpha"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_weight(Json{{"family", "exp_power"}, {"alpha", "x"}, {"p", 2}}),
                       doctest::Contains("weight.alpha"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_weight(Json{{"family", "nope"}}), doctest::Contains("nope"), ConfigError);
  CHECK_THROWS_AS(parse_weight(Json::array()), ConfigError);
  CHECK_THROWS_AS(parse_weight(Json{{"family", "exp_power"}, {"alpha", -1}, {"p", 2}}), ParameterError);

  // round trip through JSON
  const auto back = parse_weight(weight_to_json(h));
  CHECK(back.same_as(h));
}

TEST_CASE("parse_symbol") {
  const auto s = parse_symbol(Json{{"coeffs", Json::array({Json::array({1, 2}), 3})}}, 128);
  CHECK(s.is_polynomial);
  CHECK(s.poly.coeff(0) == Complex(1, 2));
  CHECK(s.poly.coeff(1) == Complex(3, 0));

  const auto e = parse_symbol(Json{{"named", "exp"}, {"scale", 2.0}, {"truncation", 10}}, 128);
  CHECK_FALSE(e.is_polynomial);
  CHECK(e.poly.truncation() == 10);
  CHECK(e.poly.coeff(3).real() == doctest::Approx(8.0 / 6.0));
  CHECK(parse_symbol(Json{{"named", "exp"}}, 17).poly.truncation() == 17);

  CHECK_THROWS_WITH_AS(parse_symbol(Json{{"coeffs", Json::array({Json::array({1})})}}, 8),
                       doctest::Contains("symbol.coeffs[0]"), ConfigError);
  CHECK_THROWS_AS(parse_symbol(Json{{"named", "sin"}}, 8), ConfigError);
  CHECK_THROWS_AS(parse_symbol(Json{{"other", 1}}, 8), ConfigError);
}

TEST_CASE("parse_run_config validation") {
  const auto c = parse_run_config(Json{{"weight", gauss()}, {"samples", 5}, {"seed", 7}});
  CHECK(c.source_weight.has_value());
  CHECK(c.sample_count == 5);
  CHECK(c.seed == 7);
  CHECK(c.truncation == 128);
  CHECK(c.grid.points == 64);
  CHECK_FALSE(c.grid_given);

  CHECK_THROWS_WITH_AS(parse_run_config(Json{{"grid", {{"r_min", 5}, {"r_max", 2}}}}), doctest::Contains("grid"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(Json{{"grid", {{"points", 15}}}}), doctest::Contains("grid.points"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(Json{{"truncation", 0}}), doctest::Contains("truncation"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json{{"truncation", -3}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json{{"tolerances", {{"slope_tol", 0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json{{"tolerances", {{"tail_fraction", 1.5}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json::array()), ConfigError);
}

TEST_CASE("number formatting and JSON emission") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  for (double x : {-2.5e-300, 1.0 / 3.0, 6.02214076e23, 5e-324}) CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");

  const std::string s = dump_json(Json{{"a", 0.1}, {"b", INFINITY}, {"c", Json::array({1, 2})}, {"d", "x"}});
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"b\": null") != std::string::npos);
  const auto parsed = Json::parse(s);
  CHECK(parsed["a"].get<double>() == 0.1);
  CHECK(parsed["b"].is_null());
  CHECK(parsed["d"] == "x");
}

TEST_CASE("condition report serialization") {
  ConditionReport rep;
  rep.name = "x";
  rep.passed = false;
  rep.witness = {{1.0, 2.0}};
  rep.sup_or_lim_estimate = 3.0;
  const Json j = to_json(rep);
  CHECK(j["name"] == "x");
  CHECK(j["passed"] == false);
  CHECK(j["witness"][0][0] == 1.0);
  CHECK(j["sup_or_lim_estimate"] == 3.0);
}

TEST_CASE("weight-check command") {
  SUBCASE("log power 1.5 fails essentialness") {
    const auto r = cmd_weight_check(Json{{"weight", {{"family", "log_power"}, {"p", 1.5}}}});
    CHECK(r.exit_code == kExitChecksFailed);
    const auto files = by_name(r);
    REQUIRE(files.count("source_essentialness.json"));
    const auto j = Json::parse(files.at("source_essentialness.json"));
    CHECK(j["passed"] == false);
    bool lower_failed = false;
    for (const auto& s : j["subchecks"]) {
      if (s["name"] == kEssentialLowerBound) lower_failed = s["passed"] == false;
    }
    CHECK(lower_failed);
    CHECK_FALSE(j["witness"].empty());
  }
  SUBCASE("exp power passes everything") {
    const auto r = cmd_weight_check(Json{{"weight", gauss()}});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.artifacts.size() == 4);
    for (const auto& a : r.artifacts) CHECK(Json::parse(a.content)["passed"] == true);
  }
  SUBCASE("selected checks on both weights") {
    const auto r = cmd_weight_check(
        Json{{"source_weight", gauss()}, {"target_weight", {{"family", "exp_power"}, {"alpha", 1}, {"p", 1}}},
             {"checks", {"axioms"}}});
    CHECK(r.exit_code == kExitOk);
    const auto files = by_name(r);
    CHECK(files.count("source_axioms.json"));
    CHECK(files.count("target_axioms.json"));
    CHECK(files.size() == 2);
  }
  SUBCASE("bad configs exit 2 and write nothing") {
    for (const Json& bad : {Json{{"weight", {{"family", "exp_power"}, {"alpha", -1}, {"p", 2}}}}, Json::object(),
                            Json{{"weight", gauss()}, {"checks", {"bogus"}}},
                            Json{{"weight", gauss()}, {"delta", 2.0}}}) {
      const auto r = cmd_weight_check(bad);
      CHECK(r.exit_code == kExitBadConfig);
      CHECK(r.artifacts.empty());
      CHECK_FALSE(r.message.empty());
    }
  }
}

TEST_CASE("classify command") {
  const char* expected[] = {"Compact", "Compact", "Bounded", "Unbounded"};
  for (int d = 1; d <= 3; ++d) {
    const auto r = cmd_classify(Json{{"weight", gauss()}, {"symbol", coeffs_of_monomial(d)}}, "volterra");
    CHECK(r.exit_code == kExitOk);
    const auto files = by_name(r);
    const auto j = Json::parse(files.at("classification.json"));
    CHECK(j["verdict"] == expected[d]);
    CHECK(j["proxy"] == "v");
    CHECK(j["form"] == "phi");
    CHECK(j.contains("warnings"));
    const auto lines = csv_lines(files.at("curve.csv"));
    CHECK(lines.front() == "r,log_q");
    CHECK(lines.size() == 65);
  }

  SUBCASE("multiplication") {
    const auto r = cmd_classify(Json{{"weight", gauss()}, {"symbol", coeffs_of_monomial(0)}}, "mult");
    CHECK(r.exit_code == kExitOk);
    CHECK(Json::parse(by_name(r).at("classification.json"))["verdict"] == "Bounded");
  }
  SUBCASE("hypothesis failure exits 4 and names the condition") {
    const auto r = cmd_classify(Json{{"source_weight", gauss()},
                                     {"target_weight", {{"family", "log_power"}, {"p", 1.5}}},
                                     {"symbol", coeffs_of_monomial(1)}},
                                "volterra");
    CHECK(r.exit_code == kExitHypothesis);
    CHECK(r.message.find("two_weight_conditions") != std::string::npos);
    CHECK(r.artifacts.empty());
  }
  SUBCASE("missing symbol exits 2") {
    CHECK(cmd_classify(Json{{"weight", gauss()}}, "volterra").exit_code == kExitBadConfig);
    CHECK(cmd_classify(Json{{"weight", gauss()}, {"symbol", coeffs_of_monomial(1)}}, "other").exit_code ==
          kExitBadConfig);
  }
  SUBCASE("grid overrides") {
    const auto r = cmd_classify(
        Json{{"weight", gauss()}, {"symbol", coeffs_of_monomial(2)}, {"grid", {{"r_max", 30}, {"points", 20}}}},
        "volterra");
    CHECK(r.exit_code == kExitOk);
    CHECK(csv_lines(by_name(r).at("curve.csv")).size() == 21);
  }
}

TEST_CASE("corollary table command") {
  const auto r = cmd_corollary_table(1.0, {2.0, 3.0}, 4);
  CHECK(r.exit_code == kExitOk);
  const auto lines = csv_lines(by_name(r).at("corollary_table.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "alpha,p,deg0,deg1,deg2,deg3,deg4,oracle_agree");
  CHECK(lines[1] == "1,2,Compact,Compact,Bounded,Unbounded,Unbounded,yes");
  CHECK(split(lines[2])[5] == "Bounded");

  const auto one = cmd_corollary_table(2.0, {1.0}, 1);
  CHECK(by_name(one).at("corollary_table.csv").find("2,1,Compact,Bounded,yes") != std::string::npos);

  // a tolerance that breaks the slope rule surfaces as an oracle disagreement
  const auto bad = cmd_corollary_table(1.0, {2.0}, 3, Json{{"tolerances", {{"slope_tol", 10.0}}}});
  CHECK(bad.exit_code == kExitOracleDisagreement);
  CHECK(by_name(bad).at("corollary_table.csv").find(",no") != std::string::npos);

  CHECK(cmd_corollary_table(1.0, {}, 3).exit_code == kExitBadConfig);
  CHECK(cmd_corollary_table(-1.0, {2.0}, 3).exit_code == kExitBadConfig);
}

TEST_CASE("lp-check command") {
  const auto r = cmd_lp_check(Json{{"samples", 10}});
  CHECK(r.exit_code == kExitOk);
  const auto files = by_name(r);
  const auto lines = csv_lines(files.at("lp_check.csv"));
  REQUIRE(lines.size() == 13);
  CHECK(lines[0] == "label,degree,log_norm_f_w,log_norm_df_u,ratio_derivative,ratio_lp");
  const auto cst = split(lines[1]);
  CHECK(cst[0] == "const");
  CHECK(std::stod(cst[4]) == 0.0);
  const auto z = split(lines[2]);
  CHECK(z[0] == "z");
  CHECK(std::stod(z[2]) == doctest::Approx(-0.5 * std::log(2 * oracle::kE)).epsilon(1e-12));
  const auto env = Json::parse(files.at("lp_envelope.json"));
  CHECK(env["count"] == 10);
  CHECK(env["seed"] == 42);

  // same seed, byte-identical output
  const auto again = cmd_lp_check(Json{{"samples", 10}});
  CHECK(by_name(again) == files);
  const auto other = cmd_lp_check(Json{{"samples", 10}, {"seed", 43}});
  CHECK(by_name(other).at("lp_check.csv") != files.at("lp_check.csv"));

  // K_p precondition
  const auto lp = cmd_lp_check(Json{{"weight", {{"family", "log_power"}, {"p", 1.5}}}});
  CHECK(lp.exit_code == kExitHypothesis);
}

TEST_CASE("lp envelope matches the frozen snapshot") {
  std::ifstream in(VFOCK_TEST_DATA "/lp_snapshot.json");
  REQUIRE(in.good());
  const auto snap = Json::parse(in);
  const auto env = Json::parse(by_name(cmd_lp_check(Json::object())).at("lp_envelope.json"));
  CHECK(env["seed"] == snap["seed"]);
  CHECK(env["count"] == snap["count"]);
  for (const char* key : {"C", "min_ratio", "max_ratio"}) {
    CAPTURE(key);
    CHECK(std::abs(env[key].get<double>() - snap[key].get<double>()) <= 1e-12);
  }
}

TEST_CASE("random polynomials") {
  const auto a = random_polynomials(42, 200);
  const auto b = random_polynomials(42, 200);
  REQUIRE(a.size() == 200);
  int max_deg = 0;
  int min_deg = 100;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coeffs() == b[i].coeffs());
    const int n = static_cast<int>(a[i].truncation());
    max_deg = std::max(max_deg, n);
    min_deg = std::min(min_deg, n);
    for (const auto& c : a[i].coeffs()) CHECK(std::abs(c) < 1.0);
  }
  CHECK(min_deg == 1);
  CHECK(max_deg == 20);
  CHECK(random_polynomials(1, 3)[0].coeffs() != a[0].coeffs());
}
