#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "regcal/hermite.hpp"
#include "regcal/heun.hpp"
#include "regcal/rdm.hpp"
#include "regcal/wavefunction.hpp"

using namespace regcal;

namespace {
constexpr Parity kSym = Parity::Symmetric;
constexpr Parity kAnti = Parity::Antisymmetric;

void check_spectrum(const EntanglementSpectrum& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() >= want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(std::abs(got.eigenvalues[i] - (i < want.size() ? want[i] : 0.0)) <= tol);
}
}  // namespace

TEST_CASE("overlaps agree with brute-force integrals") {
  const auto s = build_relative_state(0, kSym, 2, 0.0);
  const auto c = hermite_overlaps(s, 8);
  CHECK(c.c[0] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(c.c[2] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  for (int m : {1, 3, 4, 5, 6, 7}) CHECK(c.c[m] == 0.0);

  for (auto [N, parity, p, d] : {std::tuple{1, kSym, 2, 0.8}, std::tuple{0, kAnti, 3, 1.3},
                                 std::tuple{2, kSym, 6, 0.4}}) {
    const auto st = build_relative_state(N, parity, p, d);
    const auto cc = hermite_overlaps(st, st.degree() + 3);
    double total = 0.0;
    for (int m = 0; m < static_cast<int>(cc.c.size()); ++m) {
      const double brute = oracle::simpson(
          [&](double x) { return st(x) * oracle::hermite_function(m, x); }, -12, 12);
      CHECK(std::abs(cc.c[m] - brute) < 1e-11);
      if ((m % 2 == 0) == (parity == kAnti)) CHECK(cc.c[m] == 0.0);
      total += cc.c[m] * cc.c[m];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(hermite_overlaps(s, 2), std::invalid_argument);
}

TEST_CASE("large cutoff overlap tends to the vacuum") {
  CHECK(hermite_overlaps(build_relative_state(0, kSym, 2, 20.0), 3).c[0] > 0.9999);
}

TEST_CASE("rotation expansion: single modes") {
  const auto vac = rotation_expand(std::vector<double>{1.0});
  CHECK(vac(0, 0) == 1.0);
  CHECK(vac.norm() == doctest::Approx(1.0));

  const auto two = rotation_expand(std::vector<double>{0.0, 0.0, 1.0});
  CHECK(two(2, 0) == doctest::Approx(0.5));
  CHECK(two(0, 2) == doctest::Approx(0.5));
  CHECK(two(1, 1) == doctest::Approx(-1 / std::sqrt(2.0)));

  const auto one = rotation_expand(std::vector<double>{0.0, 1.0});
  CHECK(one(1, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(one(0, 1) == doctest::Approx(-1 / std::sqrt(2.0)));
}

TEST_CASE("rotation expansion agrees with two-dimensional projection") {
  // A_ij = int int Psi(x1, x2) psi_i(x1) psi_j(x2) by tensor Gauss-Hermite.
  const TwoParticleState state{build_relative_state(1, kSym, 4, 0.7)};
  const auto c = hermite_overlaps(state.relative, state.relative.degree() + 1);
  const auto A = rotation_expand(c.c);
  const auto rule = gauss_hermite(40);
  const int M = static_cast<int>(A.rows());
  Eigen::MatrixXd brute = Eigen::MatrixXd::Zero(M, M);
  for (int a = 0; a < rule->size(); ++a)
    for (int b = 0; b < rule->size(); ++b) {
      const double x1 = rule->nodes[a], x2 = rule->nodes[b];
      const double w = rule->scaled_weights[a] * rule->scaled_weights[b] *
                       two_particle_amplitude(state, x1, x2);
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
          brute(i, j) += w * oracle::hermite_function(i, x1) * oracle::hermite_function(j, x2);
    }
  CHECK((A - brute).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(A.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one-body RDM invariants") {
  for (auto [N, parity, p, d] : {std::tuple{0, kSym, 2, 0.0}, std::tuple{1, kSym, 2, 1.2},
                                 std::tuple{0, kAnti, 3, 0.5}, std::tuple{2, kAnti, 7, 0.9}}) {
    const auto rdm = state_rdm(build_relative_state(N, parity, p, d));
    CHECK(rdm.rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((rdm.rho - rdm.rho.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index i = 0; i < rdm.rho.rows(); ++i)
      for (Eigen::Index j = 0; j < rdm.rho.cols(); ++j)
        if ((i + j) % 2) CHECK(std::abs(rdm.rho(i, j)) < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rdm.rho);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    const auto spectrum = rdm_spectrum(rdm);
    CHECK(spectrum.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::is_sorted(spectrum.eigenvalues.rbegin(), spectrum.eigenvalues.rend()));
  }
  CHECK_THROWS_AS(one_body_rdm(Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("Calogero-limit RDM matrices") {
  const auto sym = state_rdm(build_relative_state(0, kSym, 2, 0.0)).rho;
  CHECK(sym(0, 0) == doctest::Approx(0.5));
  CHECK(sym(1, 1) == doctest::Approx(1.0 / 3));
  CHECK(sym(2, 2) == doctest::Approx(1.0 / 6));
  CHECK(sym(0, 2) == doctest::Approx(1 / (3 * std::sqrt(2.0))));
  CHECK((sym.topLeftCorner(3, 3) - exact_rdm_matrix(0, kSym, 0.0)).cwiseAbs().maxCoeff() < 1e-14);

  for (double d : {0.0, 0.7, 2.0}) {
    const auto rho = state_rdm(build_relative_state(0, kAnti, 3, d)).rho;
    CHECK((rho.topLeftCorner(4, 4) - exact_rdm_matrix(0, kAnti, d)).cwiseAbs().maxCoeff() < 1e-13);
    const auto rs = state_rdm(build_relative_state(0, kSym, 2, d)).rho;
    CHECK((rs.topLeftCorner(3, 3) - exact_rdm_matrix(0, kSym, d)).cwiseAbs().maxCoeff() < 1e-13);
  }
  const auto anti = exact_rdm_matrix(0, kAnti, 0.0);
  std::vector<double> entries(anti.data(), anti.data() + anti.size());
  for (double want : {7.0 / 20, 9.0 / 20, 3.0 / 20, 1.0 / 20, 3 / (10 * std::sqrt(2.0)),
                      std::sqrt(1.5) / 10}) {
    bool found = false;
    for (double e : entries) found = found || std::abs(std::abs(e) - want) < 1e-14;
    CHECK(found);
  }
  const auto far = state_rdm(build_relative_state(0, kAnti, 3, 40.0)).rho;
  CHECK(far(0, 0) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(far(1, 1) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(std::abs(far(2, 2)) < 1e-3);
  CHECK_THROWS_AS(exact_rdm_matrix(1, kSym, 0.0), std::invalid_argument);
}

TEST_CASE("spectra: Calogero limits and frozen values") {
  const double r3 = std::sqrt(3.0), r22 = std::sqrt(22.0);
  check_spectrum(state_spectrum(build_relative_state(0, kSym, 2, 0.0)),
                 {(2 + r3) / 6, 1.0 / 3, (2 - r3) / 6}, 1e-12);
  const auto anti = state_spectrum(build_relative_state(0, kAnti, 3, 0.0));
  check_spectrum(anti, {(5 + r22) / 20, (5 + r22) / 20, (5 - r22) / 20, (5 - r22) / 20}, 1e-12);
  REQUIRE(anti.groups.size() >= 2);
  CHECK(anti.groups[0].second == 2);
  CHECK(anti.groups[1].second == 2);
  check_spectrum(state_spectrum(build_relative_state(0, kSym, 2, std::sqrt(2.0))),
                 {0.96260670581, 0.03703703704, 0.00035625716}, 1e-10);
  check_spectrum(exact_spectrum(0, kSym, 1e4), {1.0, 0.0, 0.0}, 1e-6);
  CHECK_THROWS_AS(exact_spectrum(1, kSym, 1.0), std::invalid_argument);
}

TEST_CASE("closed-form spectra equal the pipeline") {
  for (double d2 : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double d = std::sqrt(d2);
    check_spectrum(state_spectrum(build_relative_state(0, kSym, 2, d)),
                   exact_spectrum(0, kSym, d).eigenvalues, 1e-9);
    check_spectrum(state_spectrum(build_relative_state(0, kAnti, 3, d)),
                   exact_spectrum(0, kAnti, d).eigenvalues, 1e-9);
  }
}

TEST_CASE("rank law and degeneracy") {
  for (int N = 0; N <= 2; ++N)
    for (double d : {0.0, 0.5, 1.5})
      for (int j = 0; j <= N; ++j) {
        const auto s = state_spectrum(build_relative_state(N, kSym, branch_label(kSym, j), d));
        CHECK(s.rank(1e-10) == 2 * N + 3);
        const auto a = state_spectrum(build_relative_state(N, kAnti, branch_label(kAnti, j), d));
        CHECK(a.rank(1e-10) == 2 * N + 4);
        for (int k = 0; k + 1 < a.rank(1e-10); k += 2)
          CHECK(std::abs(a.eigenvalues[k] - a.eigenvalues[k + 1]) < 1e-10);
      }
}

TEST_CASE("largest occupation grows with the cutoff") {
  double prev_sym = 0.0, prev_anti = 0.0;
  for (double d2 : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
    const double ls = exact_spectrum(0, kSym, std::sqrt(d2)).eigenvalues[0];
    const double la = exact_spectrum(0, kAnti, std::sqrt(d2)).eigenvalues[0];
    CHECK(ls > prev_sym);
    CHECK(la > prev_anti);
    CHECK(ls < 1.0);
    CHECK(la < 0.5);
    prev_sym = ls;
    prev_anti = la;
  }
}

TEST_CASE("closed-form kernels") {
  CHECK(exact_rdm_kernel(0, kSym, 0.0, 0.0, 0.0) ==
        doctest::Approx(1 / (4 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
  CHECK(exact_rdm_kernel(0, kAnti, 0.0, 0.0, 0.0) == doctest::Approx(0.0705236979).epsilon(1e-9));

  std::mt19937 rng(19);
  std::uniform_real_distribution<double> xd(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const double x = xd(rng), y = xd(rng);
    for (auto parity : {kSym, kAnti})
      CHECK(exact_rdm_kernel(0, parity, 0.8, x, y) ==
            doctest::Approx(exact_rdm_kernel(0, parity, 0.8, y, x)).epsilon(1e-14));
  }
  for (auto parity : {kSym, kAnti})
    CHECK(oracle::simpson([&](double x) { return exact_rdm_kernel(0, parity, 1.1, x, x); }, -12, 12) ==
          doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(exact_rdm_kernel(2, kSym, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("kernel projected on the basis reproduces the RDM matrix") {
  const auto rule = gauss_hermite(30);
  for (auto [parity, p] : {std::pair{kSym, 2}, std::pair{kAnti, 3}})
    for (double d : {0.0, 0.9}) {
      const auto rho = state_rdm(build_relative_state(0, parity, p, d)).rho;
      const int M = static_cast<int>(rho.rows());
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
          double v = 0.0;
          for (int a = 0; a < rule->size(); ++a)
            for (int b = 0; b < rule->size(); ++b) {
              const double x = rule->nodes[a], y = rule->nodes[b];
              v += rule->scaled_weights[a] * rule->scaled_weights[b] *
                   exact_rdm_kernel(0, parity, d, x, y) * oracle::hermite_function(i, x) *
                   oracle::hermite_function(j, y);
            }
          CHECK(std::abs(v - rho(i, j)) < 1e-9);
        }
    }
}

TEST_CASE("make_spectrum clamps, sorts and groups") {
  const auto s = make_spectrum({0.25, -1e-15, 0.5, 0.25 + 1e-12});
  CHECK(s.eigenvalues.front() == 0.5);
  CHECK(s.eigenvalues.back() == 0.0);
  CHECK(s.groups[1].second == 2);
  CHECK(s.rank(1e-10) == 3);
}
