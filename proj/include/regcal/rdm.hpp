#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "regcal/parity.hpp"
#include "regcal/wavefunction.hpp"

namespace regcal {

/// Overlaps c_m = <psi_m | psi_rel> with the orthonormal Hermite functions.
struct HermiteCoefficients {
  std::vector<double> c;
};

/// Exact overlaps (Gauss-Hermite quadrature of a polynomial integrand).
/// Throws std::invalid_argument unless basis_size > state.degree().
HermiteCoefficients hermite_overlaps(const RelativeState& state, int basis_size);

/// Two-particle coefficient matrix A with
///   Psi(x1, x2) = sum_ij A_ij psi_i(x1) psi_j(x2),
/// for the state psi_0(X) sum_m c_m psi_m(x). Each psi_0(X) psi_m(x)
/// expands onto |k, m-k> with 2^{-m/2} sqrt(binom(m,k)) (-1)^{m-k}.
Eigen::MatrixXd rotation_expand(std::span<const double> c);

/// One-body reduced density matrix in the Hermite basis (particle 2 traced out).
struct OneBodyRDM {
  Eigen::MatrixXd rho;
};

/// rho = A A^T. Throws std::invalid_argument if ||A||_F differs from 1 by
/// more than 1e-10.
OneBodyRDM one_body_rdm(const Eigen::MatrixXd& amplitudes);

/// Natural occupation numbers, descending, clamped to [0, 1].
struct EntanglementSpectrum {
  std::vector<double> eigenvalues;
  /// (value, multiplicity) groups of eigenvalues equal within 1e-10.
  std::vector<std::pair<double, int>> groups;

  [[nodiscard]] std::size_t size() const noexcept { return eigenvalues.size(); }
  /// Eigenvalues strictly above `threshold`.
  [[nodiscard]] int rank(double threshold) const noexcept;
  [[nodiscard]] double sum() const noexcept;
};

/// Builds a spectrum (sort, clamp, group) from raw eigenvalues.
EntanglementSpectrum make_spectrum(std::vector<double> eigenvalues);

/// Diagonalizes rho. Uses the even/odd checkerboard blocks when rho has
/// that structure, the full matrix otherwise.
EntanglementSpectrum rdm_spectrum(const OneBodyRDM& rdm);

/// Chains overlaps, rotation, partial trace and diagonalization for a
/// closed-form state in a basis of degree() + 1 functions.
EntanglementSpectrum state_spectrum(const RelativeState& state);
OneBodyRDM state_rdm(const RelativeState& state);

/// Closed-form spectra, available for N = 0 only. Throws
/// std::invalid_argument for other orders.
EntanglementSpectrum exact_spectrum(int N, Parity parity, double d);

/// Closed-form 1-RDM matrix (N = 0 only), size 3 (sym) or 4 (antisym).
Eigen::MatrixXd exact_rdm_matrix(int N, Parity parity, double d);

/// Closed-form position-space kernel rho(x, y) (N = 0 only).
double exact_rdm_kernel(int N, Parity parity, double d, double x, double y);

}  // namespace regcal
