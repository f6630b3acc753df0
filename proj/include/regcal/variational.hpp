#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "regcal/parity.hpp"
#include "regcal/rdm.hpp"

namespace regcal {

/// How the interaction (g/2)/(x^2 + d^2) is represented.
enum class Representation {
  Spectral,  // Gauss-Hermite projection onto the Hermite functions
  Dvr,       // diagonal at the eigenvalues of x^2 in the parity sector
};

struct SolverConfig {
  int basis_size = 150;        // parity-matching Hermite functions
  int quadrature_nodes = 400;  // >= 2 * basis_size + 32
  Parity parity = Parity::Symmetric;
  Representation representation = Representation::Spectral;

  /// Throws std::invalid_argument when the invariants are violated.
  void validate() const;
};

/// Relative Hamiltonian at fixed d in a parity-restricted Hermite basis,
/// H(g) = H_0 + (g/2) W with W precomputed, so g sweeps are cheap.
class RelativeHamiltonian {
 public:
  /// Throws std::invalid_argument for d <= 0 or an invalid config.
  RelativeHamiltonian(double d, SolverConfig config);

  [[nodiscard]] double cutoff() const noexcept { return d_; }
  [[nodiscard]] const SolverConfig& config() const noexcept { return config_; }
  /// Matrix of 1/(x^2 + d^2) in the basis.
  [[nodiscard]] const Eigen::MatrixXd& interaction() const noexcept { return interaction_; }
  [[nodiscard]] Eigen::MatrixXd matrix(double g) const;

 private:
  double d_;
  SolverConfig config_;
  Eigen::MatrixXd interaction_;
};

/// H(g) for the parity sector of `config`: diagonal 2j + sigma + 1/2 plus
/// the projected interaction. Exactly symmetric.
Eigen::MatrixXd hamiltonian_matrix(double g, double d, const SolverConfig& config);

struct VariationalState {
  double energy = 0.0;  // E_x
  Eigen::VectorXd coefficients;  // in the parity-restricted basis, unit norm
  SolverConfig config;
  double g = 0.0;
  double d = 0.0;

  /// Coefficients over all Hermite indices m = 0 .. 2M - 1 (zeros for the
  /// other parity).
  [[nodiscard]] std::vector<double> hermite_coefficients() const;
};

/// Lowest eigenpair. The sign is fixed by making the largest-magnitude
/// coefficient positive.
VariationalState ground_state(double g, double d, const SolverConfig& config);
VariationalState ground_state(const RelativeHamiltonian& hamiltonian, double g);

/// Entanglement spectrum of the two-particle state built from the
/// variational relative state and the center-of-mass ground state.
EntanglementSpectrum variational_spectrum(const VariationalState& state);

struct SweepRow {
  double g = 0.0;
  double energy = 0.0;
  std::vector<double> eigenvalues;  // top K, descending
  double von_neumann = 0.0;
  std::vector<double> renyi;        // one per order
  bool ok = true;
  std::string error;
};

struct SweepTable {
  double d = 0.0;
  Parity parity = Parity::Symmetric;
  SolverConfig config;
  int tracked = 12;
  std::vector<double> orders;
  std::vector<SweepRow> rows;
};

/// Solves the ground state at each g (in parallel over `threads` workers)
/// and records the top-K natural occupation numbers and entropies. A row
/// that fails is marked and the sweep continues.
SweepTable sweep(double d, std::span<const double> g_grid, const SolverConfig& config,
                 int tracked = 12, std::span<const double> orders = {}, int threads = 1);

SweepRow solve_row(const RelativeHamiltonian& hamiltonian, double g, int tracked,
                   std::span<const double> orders);

/// Returns the top eigenvalues (descending) at a coupling g.
using SpectrumProbe = std::function<std::vector<double>(double g)>;

SpectrumProbe make_probe(std::shared_ptr<const RelativeHamiltonian> hamiltonian, int tracked);

struct NullPoint {
  double g = 0.0;
  int eigen_index = 0;            // 0-based index of the largest vanishing eigenvalue
  int vanishing_count = 0;        // tracked eigenvalues below threshold at g
  double residual_eigenvalue = 0.0;
};

/// Couplings where trailing eigenvalues dip to zero. Candidates are sharp
/// local minima of each tracked eigenvalue on the grid, refined by a
/// three-point parabola in lambda (lambda ~ (g - g_n)^2 near a null point).
/// With a probe, sqrt(lambda) is fitted as |g - g_n| on shrinking stencils
/// and the point is kept only if the refined eigenvalue is below
/// `threshold`.
std::vector<NullPoint> null_point_detect(const SweepTable& table, double threshold = 1e-8,
                                         const SpectrumProbe& probe = {});

/// Samples of one tracked eigenvalue on both sides of g_n, log-spaced in
/// |g - g_n| over [inner, outer], ascending in g.
struct NullPointSamples {
  std::vector<double> g;
  std::vector<double> lambda;
};
NullPointSamples sample_around(const SpectrumProbe& probe, double g_n, int eigen_index,
                               int per_side, double inner = 1e-3, double outer = 1e-1);

struct EigenvalueTrace {
  double d = 0.0;
  std::vector<double> g;
  std::vector<double> lambda;
  std::vector<double> zeros;
};

/// Seventh natural occupation number vs g for each cutoff (symmetric
/// sector), with its refined zeros.
std::vector<EigenvalueTrace> seventh_eigenvalue_trace(std::span<const double> d_list,
                                                      std::span<const double> g_grid,
                                                      SolverConfig config, int threads = 1);

}  // namespace regcal
