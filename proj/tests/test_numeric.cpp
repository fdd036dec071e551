#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "vfock/errors.hpp"
#include "vfock/numeric.hpp"

using namespace vfock;

TEST_CASE("log grid endpoints and spacing") {
  const auto g = log_grid(1e-2, 1e3, 200);
  REQUIRE(g.size() == 200);
  CHECK(g.front() == doctest::Approx(1e-2).epsilon(1e-15));
  CHECK(g.back() == doctest::Approx(1e3).epsilon(1e-15));
  for (std::size_t i = 2; i < g.size(); ++i) {
    CHECK(std::log(g[i] / g[i - 1]) == doctest::Approx(std::log(g[1] / g[0])).epsilon(1e-10));
  }
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(log_grid(2.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), ParameterError);
}

TEST_CASE("log_sum_exp") {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> small{std::log(1.0), std::log(2.0), std::log(3.0)};
  CHECK(log_sum_exp(small) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  std::vector<double> big{1000.0, 1000.0};
  CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
  std::vector<double> with_inf{-inf, 5.0};
  CHECK(log_sum_exp(with_inf) == 5.0);
  std::vector<double> all_inf{-inf, -inf};
  CHECK(log_sum_exp(all_inf) == -inf);
  CHECK(log_sum_exp(std::vector<double>{}) == -inf);
}

TEST_CASE("safe_exp clamps the argument") {
  CHECK(std::isfinite(safe_exp(1e6)));
  CHECK(safe_exp(1e6) == std::exp(kMaxExpArgument));
  CHECK(safe_exp(1.0) == std::exp(1.0));
}

TEST_CASE("golden section on a parabola") {
  const auto m = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 2.0);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(m.value <= 0.0);
  // a constant function resolves toward the left end
  const auto flat = golden_section_max([](double) { return 1.0; }, 0.0, 1.0);
  CHECK(flat.x < 0.5);
}

TEST_CASE("golden section never returns less than the endpoints") {
  const auto m = golden_section_max([](double x) { return x; }, 0.0, 1.0, 5);
  CHECK(m.value >= 1.0);
}

TEST_CASE("bracket_and_maximize") {
  const auto f = [](double t) { return 3.0 * t - std::exp(t); };  // max at log 3
  const auto m = bracket_and_maximize(f, 0.0, 0.1, -50.0, 50.0);
  CHECK(m.x == doctest::Approx(std::log(3.0)).epsilon(1e-7));
  CHECK(m.value == doctest::Approx(3.0 * std::log(3.0) - 3.0).epsilon(1e-14));

  // increasing everywhere: the bracket leaves the domain
  CHECK_THROWS_AS(bracket_and_maximize([](double t) { return t; }, 0.0, 1.0, -10.0, 10.0),
                  DomainCoverageError);
}

TEST_CASE("least squares slope of an exact line") {
  std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y{1, -1, -3, -5, -7};
  CHECK(least_squares_slope(x, y) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("tail tests") {
  std::vector<double> down{5, 4, 3, 2.5, 2.4, 2.3, 2.2, 2.1};
  CHECK(tail_nonincreasing_or_plateau(down));
  CHECK(tail_bounded_above(down));

  std::vector<double> up{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK_FALSE(tail_nonincreasing_or_plateau(up));
  CHECK_FALSE(tail_bounded_above(up));
  CHECK(tail_nondecreasing_or_plateau(up));

  std::vector<double> plateau{1.0, 1.001, 0.999, 1.002, 1.0, 1.001, 0.9995, 1.0};
  CHECK(tail_nonincreasing_or_plateau(plateau));
  CHECK(tail_nondecreasing_or_plateau(plateau));

  // 2 - 2^{-k}: rising to a finite limit
  std::vector<double> converging;
  for (int k = 0; k < 16; ++k) converging.push_back(2.0 - std::pow(0.5, k));
  CHECK(tail_bounded_above(converging));

  std::vector<double> falling_to_zero;
  for (int k = 0; k < 16; ++k) falling_to_zero.push_back(std::pow(0.5, k));
  CHECK_FALSE(tail_nondecreasing_or_plateau(falling_to_zero));
}

TEST_CASE("tail_begin") {
  CHECK(tail_begin(64, 0.5) == 32);
  CHECK(tail_begin(10, 1.0) == 0);
  CHECK(tail_begin(200, 0.25) == 150);
}
