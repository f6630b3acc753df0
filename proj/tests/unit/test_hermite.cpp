#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "oracles.hpp"
#include "regcal/hermite.hpp"

using namespace regcal;

TEST_CASE("hermite functions match the explicit sum") {
  for (double x : {-3.1, -0.4, 0.0, 0.9, 2.5, 4.0}) {
    const auto psi = hermite_functions(16, x);
    for (int n = 0; n < 16; ++n)
      CHECK(psi[n] == doctest::Approx(oracle::hermite_function(n, x)).epsilon(1e-11));
  }
}

TEST_CASE("hermite functions stay finite far out and at high index") {
  const auto psi = hermite_functions(600, 30.0);
  for (double v : psi) CHECK(std::isfinite(v));
}

TEST_CASE("gauss-hermite integrates monomial moments exactly") {
  for (int n : {1, 5, 20, 64}) {
    const auto rule = gauss_hermite(n);
    REQUIRE(rule->size() == n);
    for (int k = 0; 2 * k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rule->weights[i] * std::pow(rule->nodes[i], 2 * k);
      const double exact = std::tgamma(k + 0.5);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss-hermite nodes are symmetric and scaled weights consistent") {
  const auto rule = gauss_hermite(400);
  for (int i = 0; i < rule->size(); ++i) {
    CHECK(rule->nodes[i] == -rule->nodes[rule->size() - 1 - i]);
    CHECK(rule->scaled_weights[i] > 0.0);
    if (std::abs(rule->nodes[i]) < 20.0)
      CHECK(rule->weights[i] ==
            doctest::Approx(rule->scaled_weights[i] * std::exp(-rule->nodes[i] * rule->nodes[i]))
                .epsilon(1e-13));
  }
  // Orthonormality of high Hermite functions with the scaled weights.
  double norm = 0.0, cross = 0.0;
  for (int i = 0; i < rule->size(); ++i) {
    const auto psi = hermite_functions(300, rule->nodes[i]);
    norm += rule->scaled_weights[i] * psi[298] * psi[298];
    cross += rule->scaled_weights[i] * psi[298] * psi[296];
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(cross) < 1e-12);
}

TEST_CASE("gauss-hermite cache is shared across threads") {
  std::shared_ptr<const GaussHermiteRule> a, b;
  std::thread t1([&] { a = gauss_hermite(37); });
  std::thread t2([&] { b = gauss_hermite(37); });
  t1.join();
  t2.join();
  CHECK(a->nodes == b->nodes);
  CHECK(exact_node_count(9) == 5);
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}
