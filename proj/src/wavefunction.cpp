#include "regcal/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "regcal/heun.hpp"
#include "regcal/hermite.hpp"

namespace regcal {

RelativeState::RelativeState(StateLabel label, std::vector<double> even_poly)
    : label_(label), q_(std::move(even_poly)) {
  while (!q_.empty() && q_.back() == 0.0) q_.pop_back();
  if (q_.empty()) throw std::invalid_argument("RelativeState: zero polynomial");
  if (q_.back() < 0.0)
    for (double& q : q_) q = -q;

  const int nodes = (2 * degree() + 6 + 1) / 2;
  const auto rule = gauss_hermite(nodes);
  const Polynomial shape = polynomial_in_x();
  double norm2 = 0.0;
  for (int k = 0; k < rule->size(); ++k) {
    const double v = shape(rule->nodes[k]);
    norm2 += rule->weights[k] * v * v;
  }
  norm_ = 1.0 / std::sqrt(norm2);
}

int RelativeState::degree() const noexcept {
  return 2 * (static_cast<int>(q_.size()) - 1) + parity_index(label_.parity);
}

Polynomial RelativeState::polynomial_in_x() const {
  const int sigma = parity_index(label_.parity);
  std::vector<double> coeffs(static_cast<std::size_t>(degree()) + 1, 0.0);
  for (std::size_t j = 0; j < q_.size(); ++j) coeffs[2 * j + sigma] = norm_ * q_[j];
  return Polynomial(std::move(coeffs));
}

double RelativeState::operator()(double x) const noexcept {
  const double t = x * x;
  double acc = 0.0;
  for (auto it = q_.rbegin(); it != q_.rend(); ++it) acc = acc * t + *it;
  if (label_.parity == Parity::Antisymmetric) acc *= x;
  return norm_ * std::exp(-0.5 * t) * acc;
}

RelativeState build_relative_state_at(int N, Parity parity, int p, double d, double g) {
  const auto w = cleared_series(N, parity, d, g);
  // (d^2 + t) * sum_n w_n t^n
  std::vector<double> q(w.size() + 1, 0.0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    q[n] += d * d * w[n];
    q[n + 1] += w[n];
  }
  StateLabel label;
  label.N = N;
  label.parity = parity;
  label.p = p;
  label.n = principal_number(N, parity, p);
  label.g = g;
  label.d = d;
  label.energy_total = quantized_energy(N, parity).total;
  return RelativeState(label, std::move(q));
}

RelativeState build_relative_state(int N, Parity parity, int p, double d) {
  const int index = root_index_of_branch(N, parity, p);
  const auto roots = coupling_roots(N, parity, d);
  return build_relative_state_at(N, parity, p, d, roots[index].g);
}

double evaluate_relative(const RelativeState& state, double x) { return state(x); }

namespace {

double residual_squared(const RelativeState& state, int nodes) {
  const auto rule = gauss_hermite(nodes);
  const Polynomial P = state.polynomial_in_x();
  const Polynomial P1 = P.derivative();
  const Polynomial P2 = P1.derivative();
  const double energy = state.relative_energy();
  const double g = state.label().g;
  const double d2 = state.label().d * state.label().d;
  double acc = 0.0;
  for (int k = 0; k < rule->size(); ++k) {
    const double x = rule->nodes[k];
    const double p = P(x);
    const double interaction = (x * x + d2) > 0.0 ? 0.5 * g * p / (x * x + d2) : 0.0;
    const double r = -0.5 * P2(x) + x * P1(x) + (0.5 - energy) * p + interaction;
    acc += rule->weights[k] * r * r;
  }
  return acc;
}

}  // namespace

double residual_norm(const RelativeState& state) {
  // psi = exp(-x^2/2) P(x):
  // (H_x - E) psi = exp(-x^2/2) [-P''/2 + x P' + (1/2 - E) P + (g/2) P / (x^2 + d^2)]
  const double coarse = std::sqrt(residual_squared(state, 400));
  const double fine = std::sqrt(residual_squared(state, 800));
  if (std::abs(coarse - fine) > 1e-9 + 1e-6 * fine)
    throw NumericalError("residual_norm: quadrature not converged (" +
                         std::to_string(coarse) + " vs " + std::to_string(fine) + ")");
  return fine;
}

double two_particle_amplitude(const TwoParticleState& state, double x1, double x2) {
  const double X = (x1 + x2) / std::numbers::sqrt2;
  const double x = (x1 - x2) / std::numbers::sqrt2;
  const double com = std::exp(-0.5 * X * X) / std::pow(std::numbers::pi, 0.25);
  return com * state.relative(x);
}

}  // namespace regcal
