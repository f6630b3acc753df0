#include "regcal/hermite.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "regcal/parity.hpp"

namespace regcal {

std::vector<double> hermite_functions(int count, double x) {
  if (count < 0) throw std::invalid_argument("hermite_functions: negative count");
  std::vector<double> psi(static_cast<std::size_t>(count));
  if (count == 0) return psi;
  psi[0] = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  if (count == 1) return psi;
  psi[1] = std::numbers::sqrt2 * x * psi[0];
  for (int k = 2; k < count; ++k)
    psi[k] = std::sqrt(2.0 / k) * x * psi[k - 1] - std::sqrt((k - 1.0) / k) * psi[k - 2];
  return psi;
}

namespace {

// log sum_{j<n} psi_j(x)^2 + x^2, i.e. the sum without the Gaussian. The
// recurrence runs on psi_j exp(x^2/2) with rescaling, so neither the
// Gaussian underflow at large |x| nor the polynomial growth can break it.
double log_christoffel_sum(int n, double x) {
  constexpr double kBig = 1e150;
  double prev = 0.0;
  double cur = 1.0 / std::pow(std::numbers::pi, 0.25);
  double sum = cur * cur;
  double log_scale = 0.0;  // of the amplitudes
  for (int j = 1; j < n; ++j) {
    const double next = j == 1 ? std::numbers::sqrt2 * x * cur
                               : std::sqrt(2.0 / j) * x * cur - std::sqrt((j - 1.0) / j) * prev;
    prev = cur;
    cur = next;
    sum += cur * cur;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      sum /= kBig * kBig;
      log_scale += std::log(kBig);
    }
  }
  return std::log(sum) + 2.0 * log_scale;
}

GaussHermiteRule build_rule(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) sub(j - 1) = std::sqrt(j / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("gauss_hermite: tridiagonal eigensolver failed");

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = solver.eigenvalues()(k);
    // psi_n'(x) = sqrt(2n) psi_{n-1}(x) - x psi_n(x); at a root only the first term survives.
    for (int iter = 0; iter < 3; ++iter) {
      const auto psi = hermite_functions(n + 1, x);
      const double slope = std::sqrt(2.0 * n) * psi[n - 1] - x * psi[n];
      if (slope == 0.0) break;
      x -= psi[n] / slope;
    }
    rule.nodes[k] = x;
  }
  // Symmetrize exactly.
  for (int k = 0; k < n / 2; ++k) {
    const double x = 0.5 * (rule.nodes[n - 1 - k] - rule.nodes[k]);
    rule.nodes[k] = -x;
    rule.nodes[n - 1 - k] = x;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  for (int k = 0; k < n; ++k) {
    const double x = rule.nodes[k];
    const double log_sum = log_christoffel_sum(n, x);
    rule.scaled_weights[k] = std::exp(x * x - log_sum);
    rule.weights[k] = std::exp(-log_sum);
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussHermiteRule> gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussHermiteRule>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussHermiteRule>(build_rule(n));
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace regcal
