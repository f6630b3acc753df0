#pragma once

#include <span>
#include <vector>

#include "regcal/parity.hpp"
#include "regcal/polynomial.hpp"

namespace regcal {

/// Quantum numbers and parameters of a quasi-exact relative state.
struct StateLabel {
  int N = 0;                  // degree of the truncated Heun series
  Parity parity = Parity::Symmetric;
  int p = 0;                  // branch, g(d = 0) = p (p - 1)
  int n = 0;                  // principal number in the Calogero limit
  double g = 0.0;
  double d = 0.0;
  double energy_total = 0.0;  // E_x + 1/2
};

/// Normalized relative-coordinate state
///
///   psi(x) = norm * exp(-x^2/2) * x^sigma * sum_j q_j x^{2j},
///
/// sigma = 0 for even, 1 for odd states. The leading q is positive.
class RelativeState {
 public:
  /// Normalizes the given even polynomial (coefficients in x^2) and fixes
  /// its overall sign. Throws std::invalid_argument for a zero polynomial.
  RelativeState(StateLabel label, std::vector<double> even_poly);

  [[nodiscard]] const StateLabel& label() const noexcept { return label_; }
  [[nodiscard]] Parity parity() const noexcept { return label_.parity; }
  [[nodiscard]] std::span<const double> even_poly() const noexcept { return q_; }
  [[nodiscard]] double norm_constant() const noexcept { return norm_; }
  [[nodiscard]] double relative_energy() const noexcept {
    return label_.energy_total - 0.5;
  }
  /// Polynomial degree in x of the prefactor of exp(-x^2/2).
  [[nodiscard]] int degree() const noexcept;
  /// norm * x^sigma * sum_j q_j x^{2j} as a polynomial in x.
  [[nodiscard]] Polynomial polynomial_in_x() const;

  [[nodiscard]] double operator()(double x) const noexcept;

 private:
  StateLabel label_;
  std::vector<double> q_;
  double norm_ = 1.0;
};

/// Quasi-exact state on branch p of truncation order N at cutoff d.
/// Built from the downward-cleared Heun series times (d^2 + x^2).
RelativeState build_relative_state(int N, Parity parity, int p, double d);

/// Same construction at an explicitly supplied coupling (e.g. a point
/// taken from an isoenergetic curve).
RelativeState build_relative_state_at(int N, Parity parity, int p, double d, double g);

double evaluate_relative(const RelativeState& state, double x);

/// ||(H_x - E_x) psi|| / ||psi|| with the interaction term integrated by
/// Gauss-Hermite quadrature (400 nodes, checked against 800). Uses the
/// coupling stored in the state's label. Throws NumericalError if the two
/// quadratures disagree.
double residual_norm(const RelativeState& state);

/// Relative state times the normalized center-of-mass ground state.
struct TwoParticleState {
  RelativeState relative;
  double com_energy = 0.5;

  [[nodiscard]] double total_energy() const noexcept {
    return relative.relative_energy() + com_energy;
  }
};

/// Psi_0(X) psi(x) with X = (x1 + x2)/sqrt2, x = (x1 - x2)/sqrt2.
double two_particle_amplitude(const TwoParticleState& state, double x1, double x2);

}  // namespace regcal
