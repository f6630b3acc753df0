#include "regcal/rdm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "regcal/hermite.hpp"

namespace regcal {

HermiteCoefficients hermite_overlaps(const RelativeState& state, int basis_size) {
  if (basis_size <= state.degree())
    throw std::invalid_argument("hermite_overlaps: basis size " + std::to_string(basis_size) +
                                " cannot hold a state of degree " +
                                std::to_string(state.degree()));
  const auto rule = gauss_hermite(exact_node_count(state.degree() + basis_size - 1));
  const Polynomial shape = state.polynomial_in_x();
  HermiteCoefficients out;
  out.c.assign(static_cast<std::size_t>(basis_size), 0.0);
  for (int k = 0; k < rule->size(); ++k) {
    const double x = rule->nodes[k];
    // psi(x) psi_m(x) = exp(-x^2) * shape(x) * h_m(x); psi_m carries exp(-x^2/2).
    const double weight = rule->scaled_weights[k] * std::exp(-0.5 * x * x) * shape(x);
    const auto psi = hermite_functions(basis_size, x);
    for (int m = 0; m < basis_size; ++m) out.c[m] += weight * psi[m];
  }
  // Parity sparsity and the polynomial degree make these exactly zero.
  const int sigma = parity_index(state.parity());
  for (int m = 0; m < basis_size; ++m)
    if (m % 2 != sigma || m > state.degree()) out.c[m] = 0.0;
  return out;
}

Eigen::MatrixXd rotation_expand(std::span<const double> c) {
  const auto size = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index m = 0; m < size; ++m) {
    if (c[m] == 0.0) continue;
    const double log_prefactor = -0.5 * m * std::numbers::ln2 + 0.5 * std::lgamma(m + 1.0);
    for (Eigen::Index k = 0; k <= m; ++k) {
      const double log_mag =
          log_prefactor - 0.5 * (std::lgamma(k + 1.0) + std::lgamma(m - k + 1.0));
      const double sign = (m - k) % 2 == 0 ? 1.0 : -1.0;
      A(k, m - k) += c[m] * sign * std::exp(log_mag);
    }
  }
  return A;
}

OneBodyRDM one_body_rdm(const Eigen::MatrixXd& amplitudes) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("one_body_rdm: amplitude matrix not normalized (|A|_F = " +
                                std::to_string(norm) + ")");
  OneBodyRDM out;
  out.rho = amplitudes * amplitudes.transpose();
  return out;
}

int EntanglementSpectrum::rank(double threshold) const noexcept {
  return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                        [threshold](double v) { return v > threshold; }));
}

double EntanglementSpectrum::sum() const noexcept {
  double s = 0.0;
  for (double v : eigenvalues) s += v;
  return s;
}

EntanglementSpectrum make_spectrum(std::vector<double> eigenvalues) {
  for (double& v : eigenvalues) v = std::clamp(v, 0.0, 1.0);
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  EntanglementSpectrum out;
  for (double v : eigenvalues) {
    if (!out.groups.empty() && std::abs(out.groups.back().first - v) <= 1e-10)
      ++out.groups.back().second;
    else
      out.groups.emplace_back(v, 1);
  }
  out.eigenvalues = std::move(eigenvalues);
  return out;
}

namespace {

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("rdm_spectrum: eigensolver failed");
  return {solver.eigenvalues().begin(), solver.eigenvalues().end()};
}

Eigen::MatrixXd parity_block(const Eigen::MatrixXd& m, int offset) {
  const Eigen::Index size = (m.rows() - offset + 1) / 2;
  Eigen::MatrixXd block(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) block(i, j) = m(2 * i + offset, 2 * j + offset);
  return block;
}

}  // namespace

EntanglementSpectrum rdm_spectrum(const OneBodyRDM& rdm) {
  const auto& rho = rdm.rho;
  bool checkerboard = true;
  for (Eigen::Index i = 0; i < rho.rows() && checkerboard; ++i)
    for (Eigen::Index j = i + 1; j < rho.cols(); j += 2)
      if (rho(i, j) != 0.0) {
        checkerboard = false;
        break;
      }
  if (!checkerboard) return make_spectrum(symmetric_eigenvalues(rho));

  auto values = symmetric_eigenvalues(parity_block(rho, 0));
  const auto odd = symmetric_eigenvalues(parity_block(rho, 1));
  values.insert(values.end(), odd.begin(), odd.end());
  return make_spectrum(std::move(values));
}

OneBodyRDM state_rdm(const RelativeState& state) {
  const auto c = hermite_overlaps(state, state.degree() + 1);
  return one_body_rdm(rotation_expand(c.c));
}

EntanglementSpectrum state_spectrum(const RelativeState& state) {
  return rdm_spectrum(state_rdm(state));
}

namespace {

void require_closed_form(int N) {
  if (N != 0)
    throw std::invalid_argument("closed forms are available for N = 0 only (got N = " +
                                std::to_string(N) + ")");
}

}  // namespace

EntanglementSpectrum exact_spectrum(int N, Parity parity, double d) {
  require_closed_form(N);
  const double d2 = d * d;
  if (parity == Parity::Symmetric) {
    const double q = 3.0 + 4.0 * d2 + 4.0 * d2 * d2;
    const double root = (1.0 + 2.0 * d2) * std::sqrt(q);
    const double base = 2.0 + 4.0 * d2 + 4.0 * d2 * d2;
    return make_spectrum({(base + root) / (2.0 * q), 1.0 / q, (base - root) / (2.0 * q)});
  }
  const double u = d2 * (3.0 + d2);
  const double ratio = std::sqrt(2.0 * (99.0 + 4.0 * u * (15.0 + 2.0 * u))) / (15.0 + 4.0 * u);
  const double plus = 0.25 * (1.0 + ratio);
  const double minus = 0.25 * (1.0 - ratio);
  return make_spectrum({plus, plus, minus, minus});
}

Eigen::MatrixXd exact_rdm_matrix(int N, Parity parity, double d) {
  require_closed_form(N);
  const double d2 = d * d, d4 = d2 * d2;
  if (parity == Parity::Symmetric) {
    const double den = 0.75 + d2 + d4;
    const double off = (1.0 + 2.0 * d2) / (4.0 * std::numbers::sqrt2 * den);
    Eigen::MatrixXd m(3, 3);
    m << (0.375 + d2 + d4) / den, 0.0, off,  //
        0.0, 1.0 / (4.0 * den), 0.0,          //
        off, 0.0, 1.0 / (8.0 * den);
    return m;
  }
  const double den = 4.0 * (15.0 + 12.0 * d2 + 4.0 * d4);
  const double off02 = 3.0 * std::numbers::sqrt2 * (3.0 + 2.0 * d2) / den;
  const double off13 = std::sqrt(6.0) * (3.0 + 2.0 * d2) / den;
  Eigen::MatrixXd m(4, 4);
  m << (21.0 + 24.0 * d2 + 8.0 * d4) / den, 0.0, off02, 0.0,  //
      0.0, (27.0 + 24.0 * d2 + 8.0 * d4) / den, 0.0, off13,    //
      off02, 0.0, 9.0 / den, 0.0,                               //
      0.0, off13, 0.0, 3.0 / den;
  return m;
}

double exact_rdm_kernel(int N, Parity parity, double d, double x, double y) {
  require_closed_form(N);
  const double d2 = d * d, d4 = d2 * d2;
  const double gauss = std::exp(-0.5 * (x * x + y * y));
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double s2 = x * x + y * y;
  if (parity == Parity::Symmetric) {
    const double q = 3.0 + 4.0 * d2 + 4.0 * d4;
    return gauss / (4.0 * sqrt_pi * q) *
           (3.0 + 8.0 * d2 + 16.0 * d4 + 2.0 * (1.0 + 4.0 * d2) * s2 + 8.0 * x * y +
            4.0 * x * x * y * y);
  }
  const double q = 15.0 + 12.0 * d2 + 4.0 * d4;
  const double xy = x * y;
  return gauss / (8.0 * sqrt_pi * q) *
         (15.0 + 24.0 * d2 + 16.0 * d4 + (54.0 + 48.0 * d2 + 32.0 * d4) * xy +
          6.0 * (3.0 + 4.0 * d2) * s2 + 4.0 * (3.0 + 4.0 * d2) * xy * s2 + 36.0 * xy * xy +
          8.0 * xy * xy * xy);
}

}  // namespace regcal
