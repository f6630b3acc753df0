#include "regcal/variational.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "regcal/entropy.hpp"
#include "regcal/hermite.hpp"

namespace regcal {

void SolverConfig::validate() const {
  if (basis_size < 10) throw std::invalid_argument("basis size must be >= 10");
  if (quadrature_nodes < 2 * basis_size + 32)
    throw std::invalid_argument("quadrature nodes must be >= 2 * basis size + 32");
}

namespace {

Eigen::MatrixXd spectral_interaction(double d, const SolverConfig& config) {
  const int M = config.basis_size;
  const int sigma = parity_index(config.parity);
  const auto rule = gauss_hermite(config.quadrature_nodes);
  const int Q = rule->size();
  // Rows: nodes, scaled by sqrt(weight / (x^2 + d^2)); columns: basis.
  Eigen::MatrixXd phi(Q, M);
  for (int k = 0; k < Q; ++k) {
    const double x = rule->nodes[k];
    const double scale = std::sqrt(rule->scaled_weights[k] / (x * x + d * d));
    const auto psi = hermite_functions(2 * M, x);
    for (int j = 0; j < M; ++j) phi(k, j) = scale * psi[2 * j + sigma];
  }
  Eigen::MatrixXd w = phi.transpose() * phi;
  return 0.5 * (w + w.transpose());
}

Eigen::MatrixXd dvr_interaction(double d, const SolverConfig& config) {
  const int M = config.basis_size;
  const int sigma = parity_index(config.parity);
  // x^2 within one parity sector is tridiagonal.
  Eigen::VectorXd diag(M);
  Eigen::VectorXd sub(M - 1);
  for (int j = 0; j < M; ++j) {
    const double m = 2.0 * j + sigma;
    diag(j) = m + 0.5;
    if (j + 1 < M) sub(j) = 0.5 * std::sqrt((m + 1.0) * (m + 2.0));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericalError("DVR: diagonalization of x^2 failed");
  const Eigen::VectorXd potential =
      (solver.eigenvalues().array() + d * d).inverse().matrix();
  const auto& U = solver.eigenvectors();
  Eigen::MatrixXd w = U * potential.asDiagonal() * U.transpose();
  return 0.5 * (w + w.transpose());
}

}  // namespace

RelativeHamiltonian::RelativeHamiltonian(double d, SolverConfig config)
    : d_(d), config_(config) {
  config_.validate();
  if (!(d > 0.0) || !std::isfinite(d))
    throw std::invalid_argument("variational solver needs d > 0 (the d = 0 interaction is singular)");
  interaction_ = config_.representation == Representation::Spectral
                     ? spectral_interaction(d, config_)
                     : dvr_interaction(d, config_);
}

Eigen::MatrixXd RelativeHamiltonian::matrix(double g) const {
  const int M = config_.basis_size;
  const int sigma = parity_index(config_.parity);
  Eigen::MatrixXd h = (0.5 * g) * interaction_;
  for (int j = 0; j < M; ++j) h(j, j) += 2.0 * j + sigma + 0.5;
  return h;
}

Eigen::MatrixXd hamiltonian_matrix(double g, double d, const SolverConfig& config) {
  if (g < 0.0) throw std::invalid_argument("coupling g must be >= 0");
  return RelativeHamiltonian(d, config).matrix(g);
}

std::vector<double> VariationalState::hermite_coefficients() const {
  const int sigma = parity_index(config.parity);
  const auto M = coefficients.size();
  std::vector<double> c(2 * M - 1 + sigma, 0.0);
  for (Eigen::Index j = 0; j < M; ++j) c[2 * j + sigma] = coefficients(j);
  return c;
}

VariationalState ground_state(const RelativeHamiltonian& hamiltonian, double g) {
  if (g < 0.0) throw std::invalid_argument("coupling g must be >= 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian.matrix(g));
  if (solver.info() != Eigen::Success)
    throw NumericalError("ground_state: eigensolver failed at g = " + std::to_string(g));
  VariationalState state;
  state.energy = solver.eigenvalues()(0);
  state.coefficients = solver.eigenvectors().col(0);
  state.coefficients.normalize();
  Eigen::Index largest = 0;
  state.coefficients.cwiseAbs().maxCoeff(&largest);
  if (state.coefficients(largest) < 0.0) state.coefficients = -state.coefficients;
  state.config = hamiltonian.config();
  state.g = g;
  state.d = hamiltonian.cutoff();
  return state;
}

VariationalState ground_state(double g, double d, const SolverConfig& config) {
  return ground_state(RelativeHamiltonian(d, config), g);
}

EntanglementSpectrum variational_spectrum(const VariationalState& state) {
  const auto c = state.hermite_coefficients();
  return rdm_spectrum(one_body_rdm(rotation_expand(c)));
}

SweepRow solve_row(const RelativeHamiltonian& hamiltonian, double g, int tracked,
                   std::span<const double> orders) {
  SweepRow row;
  row.g = g;
  try {
    const auto state = ground_state(hamiltonian, g);
    const auto spectrum = variational_spectrum(state);
    row.energy = state.energy;
    row.eigenvalues.assign(static_cast<std::size_t>(tracked), 0.0);
    std::copy_n(spectrum.eigenvalues.begin(),
                std::min<std::size_t>(tracked, spectrum.size()), row.eigenvalues.begin());
    row.von_neumann = von_neumann_entropy(spectrum).value;
    for (double a : orders) row.renyi.push_back(renyi_entropy(spectrum, a).value);
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

SweepTable sweep(double d, std::span<const double> g_grid, const SolverConfig& config,
                 int tracked, std::span<const double> orders, int threads) {
  if (tracked < 1) throw std::invalid_argument("sweep: need at least one tracked eigenvalue");
  for (std::size_t i = 1; i < g_grid.size(); ++i)
    if (!(g_grid[i] > g_grid[i - 1]))
      throw std::invalid_argument("sweep: g grid must be strictly ascending");
  for (double a : orders)
    if (!(a > 0.0)) throw std::invalid_argument("sweep: Renyi orders must be positive");

  const RelativeHamiltonian hamiltonian(d, config);
  SweepTable table;
  table.d = d;
  table.parity = config.parity;
  table.config = config;
  table.tracked = tracked;
  table.orders.assign(orders.begin(), orders.end());
  table.rows.resize(g_grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < g_grid.size(); i = next++)
      table.rows[i] = solve_row(hamiltonian, g_grid[i], tracked, orders);
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(g_grid.size(), 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return table;
}

SpectrumProbe make_probe(std::shared_ptr<const RelativeHamiltonian> hamiltonian, int tracked) {
  return [hamiltonian = std::move(hamiltonian), tracked](double g) {
    auto spectrum = variational_spectrum(ground_state(*hamiltonian, g));
    spectrum.eigenvalues.resize(static_cast<std::size_t>(tracked), 0.0);
    return spectrum.eigenvalues;
  };
}

namespace {

constexpr double kNoiseFloor = 1e-13;

struct Vertex {
  double g;
  double value;
};

// Vertex of the parabola through (g0 - h, a), (g0, b), (g0 + h, c).
Vertex parabola_vertex(double g0, double h, double a, double b, double c) {
  const double curvature = a - 2.0 * b + c;
  if (!(curvature > 0.0)) return {g0, b};
  const double shift = 0.5 * h * (a - c) / curvature;
  const double clamped = std::clamp(shift, -h, h);
  const double value = b - 0.125 * (a - c) * (a - c) / curvature;
  return {g0 + clamped, value};
}

struct Candidate {
  std::size_t row;
  int index;
};

}  // namespace

std::vector<NullPoint> null_point_detect(const SweepTable& table, double threshold,
                                         const SpectrumProbe& probe) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    if (table.rows[i].ok) rows.push_back(i);
  if (rows.size() < 3) return {};

  auto value = [&](std::size_t pos, int index) {
    return table.rows[rows[pos]].eigenvalues[index];
  };
  auto g_at = [&](std::size_t pos) { return table.rows[rows[pos]].g; };

  // The two largest occupation numbers never vanish.
  std::vector<Candidate> candidates;
  for (int index = 2; index < table.tracked; ++index) {
    for (std::size_t pos = 1; pos + 1 < rows.size(); ++pos) {
      const double left = value(pos - 1, index), mid = value(pos, index),
                   right = value(pos + 1, index);
      const double rim = std::max(left, right);
      if (rim < kNoiseFloor) continue;
      if (mid <= left && mid < right && mid < 0.25 * rim) candidates.push_back({pos, index});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.row < b.row || (a.row == b.row && a.index < b.index);
  });

  std::vector<NullPoint> out;
  std::size_t i = 0;
  while (i < candidates.size()) {
    // Cluster candidates within two grid rows; refine on the smallest index.
    std::size_t j = i;
    Candidate lead = candidates[i];
    int members = 0;
    while (j < candidates.size() && candidates[j].row <= candidates[i].row + 2) {
      if (candidates[j].index < lead.index) lead = candidates[j];
      ++members;
      ++j;
    }
    i = j;

    const std::size_t pos = lead.row;
    const double h = 0.5 * (g_at(pos + 1) - g_at(pos - 1));
    Vertex vertex = parabola_vertex(g_at(pos), h, value(pos - 1, lead.index),
                                    value(pos, lead.index), value(pos + 1, lead.index));
    NullPoint point;
    point.eigen_index = lead.index;

    if (probe) {
      // sqrt(lambda) ~ sqrt(c) |g - g_n| is V-shaped, so the two stencil
      // values locate g_n directly.
      double step = h;
      std::vector<double> centre;
      for (int iter = 0; iter < 40 && step > 1e-10; ++iter) {
        const double lo = probe(vertex.g - step)[lead.index];
        const double hi = probe(vertex.g + step)[lead.index];
        if (!(std::min(lo, hi) > 0.0)) break;
        const double r_lo = std::sqrt(lo), r_hi = std::sqrt(hi);
        const double shift = step * (r_lo - r_hi) / (r_lo + r_hi);
        vertex.g += shift;
        // Shrink only once g_n sits inside the stencil.
        if (std::abs(shift) < 0.5 * step) step *= 0.1;
      }
      centre = probe(vertex.g);
      point.residual_eigenvalue = centre[lead.index];
      point.vanishing_count = static_cast<int>(
          std::count_if(centre.begin(), centre.end(), [&](double v) { return v < threshold; }));
    } else {
      point.residual_eigenvalue = std::max(vertex.value, 0.0);
      point.vanishing_count = members;
    }
    point.g = vertex.g;
    if (point.residual_eigenvalue < threshold) out.push_back(point);
  }
  return out;
}

NullPointSamples sample_around(const SpectrumProbe& probe, double g_n, int eigen_index,
                               int per_side, double inner, double outer) {
  if (per_side < 2) throw std::invalid_argument("sample_around: need >= 2 points per side");
  if (!(inner > 0.0 && outer > inner))
    throw std::invalid_argument("sample_around: need 0 < inner < outer");
  std::vector<double> offsets(per_side);
  const double ratio = std::log(outer / inner) / (per_side - 1);
  for (int i = 0; i < per_side; ++i) offsets[i] = inner * std::exp(ratio * i);

  NullPointSamples out;
  auto add = [&](double g) {
    const auto values = probe(g);
    if (eigen_index < 0 || eigen_index >= static_cast<int>(values.size()))
      throw std::invalid_argument("sample_around: eigen index outside the tracked range");
    out.g.push_back(g);
    out.lambda.push_back(values[eigen_index]);
  };
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) add(g_n - *it);
  for (double offset : offsets) add(g_n + offset);
  return out;
}

std::vector<EigenvalueTrace> seventh_eigenvalue_trace(std::span<const double> d_list,
                                                      std::span<const double> g_grid,
                                                      SolverConfig config, int threads) {
  constexpr int kIndex = 6;
  config.parity = Parity::Symmetric;
  std::vector<EigenvalueTrace> traces;
  for (double d : d_list) {
    const auto table = sweep(d, g_grid, config, kIndex + 1, {}, threads);
    EigenvalueTrace trace;
    trace.d = d;
    for (const auto& row : table.rows) {
      if (!row.ok) continue;
      trace.g.push_back(row.g);
      trace.lambda.push_back(row.eigenvalues[kIndex]);
    }
    auto hamiltonian = std::make_shared<const RelativeHamiltonian>(d, config);
    for (const auto& point : null_point_detect(table, 1e-8, make_probe(hamiltonian, kIndex + 1)))
      if (point.eigen_index <= kIndex) trace.zeros.push_back(point.g);
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace regcal
