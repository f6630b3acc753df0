#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "regcal/heun.hpp"
#include "regcal/rdm.hpp"
#include "regcal/wavefunction.hpp"

using namespace regcal;

namespace {
constexpr Parity kSym = Parity::Symmetric;
constexpr Parity kAnti = Parity::Antisymmetric;
const double kPiQuarter = std::pow(std::numbers::pi, 0.25);

double norm_by_simpson(const RelativeState& s) {
  return oracle::simpson([&](double x) { return s(x) * s(x); }, -12.0, 12.0);
}

int sign_changes(const RelativeState& s) {
  int changes = 0;
  double prev = s(-8.0);
  for (int i = 1; i <= 16000; ++i) {
    const double v = s(-8.0 + 1e-3 * i);
    if (std::abs(v) < 1e-300) continue;
    if (prev * v < 0.0) ++changes;
    prev = v;
  }
  return changes;
}
}  // namespace

TEST_CASE("symmetric N=0 state equals its closed form") {
  for (double d : {0.0, 0.5, 1.0, 2.0}) {
    const auto s = build_relative_state(0, kSym, 2, d);
    const double d2 = d * d;
    const double pref = 2.0 / (kPiQuarter * std::sqrt(3 + 4 * d2 + 4 * d2 * d2));
    for (double x : {-2.3, -0.5, 0.0, 0.7, 1.9, 3.4})
      CHECK(s(x) == doctest::Approx(pref * (d2 + x * x) * std::exp(-0.5 * x * x)).epsilon(1e-12));
    CHECK(evaluate_relative(s, 0.0) == doctest::Approx(pref * d2));
    CHECK(s.relative_energy() == 2.5);
    CHECK(s.label().g == doctest::Approx(2 + 4 * d2));
  }
}

TEST_CASE("N=1 Calogero limits") {
  const auto ground = build_relative_state(1, kSym, 4, 0.0);
  for (double x : {-1.5, 0.3, 2.2})
    CHECK(ground(x) == doctest::Approx(4 * std::pow(x, 4) * std::exp(-0.5 * x * x) /
                                       (kPiQuarter * std::sqrt(105.0))).epsilon(1e-12));
  CHECK(ground.label().n == 0);

  // Second excited state ~ x^2 (2x^2 - 5), normalized independently.
  const auto excited = build_relative_state(1, kSym, 2, 0.0);
  auto shape = [](double x) { return x * x * (2 * x * x - 5) * std::exp(-0.5 * x * x); };
  const double c = 1.0 / std::sqrt(oracle::simpson([&](double x) { return shape(x) * shape(x); }, -12, 12));
  for (double x : {-1.5, 0.3, 2.2}) CHECK(excited(x) == doctest::Approx(c * shape(x)).epsilon(1e-9));
  CHECK(excited.label().n == 2);
  CHECK(sign_changes(excited) == 2);
  CHECK(sign_changes(ground) == 0);
  CHECK(sign_changes(build_relative_state(0, kSym, 2, 0.7)) == 0);
}

TEST_CASE("antisymmetric N=0 state equals its closed form") {
  for (double d : {0.0, 0.8, 1.5}) {
    const auto s = build_relative_state(0, kAnti, 3, d);
    const double d2 = d * d;
    const double pref = 2 * std::sqrt(2.0) / (kPiQuarter * std::sqrt(15 + 12 * d2 + 4 * d2 * d2));
    for (double x : {-1.1, 0.4, 2.0})
      CHECK(s(x) == doctest::Approx(pref * x * (d2 + x * x) * std::exp(-0.5 * x * x)).epsilon(1e-12));
    CHECK(s(0.0) == 0.0);
    CHECK(s.relative_energy() == 3.5);
  }
}

TEST_CASE("normalization, parity and sign convention") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xd(-4.0, 4.0);
  for (auto parity : {kSym, kAnti})
    for (int N = 0; N <= 2; ++N)
      for (int j = 0; j <= N; ++j)
        for (double d : {0.0, 0.6, 1.4}) {
          const int p = branch_label(parity, j);
          const auto s = build_relative_state(N, parity, p, d);
          CHECK(norm_by_simpson(s) == doctest::Approx(1.0).epsilon(1e-12));
          CHECK(s.even_poly().back() > 0.0);
          CHECK(s.degree() == 2 * (N + 1) + (parity == kAnti ? 1 : 0));
          const double sgn = parity == kSym ? 1.0 : -1.0;
          for (int k = 0; k < 7; ++k) {
            const double x = xd(rng);
            CHECK(s(-x) == doctest::Approx(sgn * s(x)).epsilon(1e-14));
          }
          if (parity == kSym && d > 0) CHECK(s(0.0) != 0.0);
        }
}

TEST_CASE("residual vanishes only on the curve") {
  for (auto parity : {kSym, kAnti})
    for (int N = 0; N <= 2; ++N)
      for (int j = 0; j <= N; ++j)
        for (double d : {0.3, 1.0, 2.0}) {
          const auto s = build_relative_state(N, parity, branch_label(parity, j), d);
          CHECK(residual_norm(s) <= 1e-10);
        }

  const auto s = build_relative_state(0, kSym, 2, 1.0);
  StateLabel off = s.label();
  off.g += 0.1;
  const auto q = s.even_poly();
  const RelativeState perturbed(off, std::vector<double>(q.begin(), q.end()));
  const double r = residual_norm(perturbed);
  CHECK(r > 1e-3);
  // Only the interaction changes: the residual is 0.05 ||psi / (x^2 + 1)||,
  // and psi / (x^2 + 1) is 2 / (pi^(1/4) sqrt 11) times the Gaussian.
  CHECK(r == doctest::Approx(0.1 / std::sqrt(11.0)).epsilon(1e-12));
}

TEST_CASE("curvature at the origin flips at d = sqrt 2") {
  auto second = [](double d) {
    const auto s = build_relative_state(0, kSym, 2, d);
    const double h = 1e-3;
    return (s(h) - 2 * s(0.0) + s(-h)) / (h * h);
  };
  CHECK(second(std::sqrt(2.0) - 0.05) > 0.0);
  CHECK(second(std::sqrt(2.0) + 0.05) < 0.0);
}

TEST_CASE("large cutoff approaches the oscillator ground state") {
  const auto s = build_relative_state(0, kSym, 2, 10.0);
  double sup = 0.0;
  for (int i = -600; i <= 600; ++i) {
    const double x = 0.01 * i;
    sup = std::max(sup, std::abs(s(x) - std::exp(-0.5 * x * x) / kPiQuarter));
  }
  CHECK(sup < 0.05);
}

TEST_CASE("two-particle amplitude exchange symmetry and rotation") {
  const TwoParticleState sym{build_relative_state(1, kSym, 4, 0.9)};
  const TwoParticleState anti{build_relative_state(0, kAnti, 3, 0.9)};
  CHECK(sym.total_energy() == 5.0);
  CHECK(anti.total_energy() == 4.0);
  for (auto [x1, x2] : {std::pair{0.3, -1.2}, std::pair{1.7, 0.4}, std::pair{-0.8, -2.0}}) {
    CHECK(two_particle_amplitude(sym, x1, x2) == doctest::Approx(two_particle_amplitude(sym, x2, x1)));
    CHECK(two_particle_amplitude(anti, x1, x2) == doctest::Approx(-two_particle_amplitude(anti, x2, x1)));
    const double X = (x1 + x2) / std::sqrt(2.0), x = (x1 - x2) / std::sqrt(2.0);
    CHECK(two_particle_amplitude(sym, x1, x2) ==
          doctest::Approx(std::exp(-0.5 * X * X) / kPiQuarter * sym.relative(x)));
  }
}

TEST_CASE("large-cutoff N=1 p=2 state: coefficients on two-particle modes") {
  const auto s = build_relative_state(1, kSym, 2, 30.0);
  const auto c = hermite_overlaps(s, s.degree() + 1);
  const auto A = rotation_expand(c.c);
  const double sign = A(2, 0) > 0 ? 1.0 : -1.0;
  CHECK(sign * A(2, 0) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(sign * A(0, 2) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(sign * A(1, 1) == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(build_relative_state(0, kSym, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RelativeState(StateLabel{}, {0.0, 0.0}), std::invalid_argument);
}
