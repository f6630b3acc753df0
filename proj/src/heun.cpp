#include "regcal/heun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace regcal {

namespace {

void require_order(int N) {
  if (N < 0) throw std::invalid_argument("truncation order N must be >= 0");
}

void require_cutoff(double d) {
  if (!(d >= 0.0) || !std::isfinite(d))
    throw std::invalid_argument("cutoff d must be finite and >= 0");
}

}  // namespace

HeunParameters heun_parameters(double g, double d, Parity parity, double k_squared) {
  require_cutoff(d);
  if (!(k_squared > 0.0)) throw std::invalid_argument("k^2 must be positive");

  HeunParameters p;
  p.parity = parity;
  p.coupling = g;
  p.k_squared = k_squared;
  p.alpha = d * d;
  p.beta = heun_beta(parity);
  p.gamma = 1.0;
  p.eta = (p.alpha * k_squared - g + 2.0) / 4.0;
  p.delta = -(p.alpha * k_squared) / 4.0;
  const double a = p.alpha, b = p.beta, c = p.gamma;
  p.mu = 0.5 * (a - b - c + a * b - b * c) - p.eta;
  p.nu = p.eta + p.delta + 0.5 * (a + b + c + a * c + b * c);
  return p;
}

RecurrenceTerms recurrence_coefficients(const HeunParameters& params, int n) {
  if (n < 1) throw std::invalid_argument("recurrence index n must be >= 1");
  const double a = params.alpha, b = params.beta, c = params.gamma;
  const double dn = n;
  RecurrenceTerms t;
  t.a = 1.0 + b / dn;
  t.b = 1.0 + (-a + b + c - 1.0) / dn +
        (params.eta - (-a + b + c) / 2.0 - a * b / 2.0 + b * c / 2.0) / (dn * dn);
  t.c = (params.delta + a * ((b + c) / 2.0 + dn - 1.0)) / (dn * dn);
  return t;
}

SeriesCoefficients heun_series(const HeunParameters& params, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  SeriesCoefficients s;
  s.v.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  s.v[0] = 1.0;
  double prev2 = 0.0;  // v_{n-2}
  for (int n = 1; n <= n_max; ++n) {
    const auto t = recurrence_coefficients(params, n);
    const double prev = s.v[n - 1];
    s.v[n] = (t.b * prev + t.c * prev2) / t.a;
    prev2 = prev;
  }
  return s;
}

SeriesCoefficients heun_series_in_g(double d, Parity parity, double k_squared,
                                    int n_max, double g_eval) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  // Only eta depends on g, entering B_n as -g / (4 n^2).
  const auto base = heun_parameters(0.0, d, parity, k_squared);
  SeriesCoefficients s;
  s.as_poly_in_g.reserve(static_cast<std::size_t>(n_max) + 1);
  s.as_poly_in_g.push_back(Polynomial::constant(1.0));
  Polynomial prev2 = Polynomial::constant(0.0);
  for (int n = 1; n <= n_max; ++n) {
    const auto t = recurrence_coefficients(base, n);
    const double slope = -1.0 / (4.0 * n * n);
    Polynomial next = Polynomial::linear(t.b, slope) * s.as_poly_in_g.back() +
                      prev2 * t.c;
    next *= 1.0 / t.a;
    prev2 = s.as_poly_in_g.back();
    s.as_poly_in_g.push_back(std::move(next));
  }
  s.v = heun_series(heun_parameters(g_eval, d, parity, k_squared), n_max).v;
  return s;
}

QuantizedEnergy quantized_energy(int N, Parity parity) {
  require_order(N);
  QuantizedEnergy e;
  e.k_squared = 4.0 * N + (parity == Parity::Symmetric ? 5.0 : 7.0);
  e.total = e.k_squared / 2.0 + 0.5;
  return e;
}

int branch_label(Parity parity, int root_index) {
  return 2 * (root_index + 1) + parity_index(parity);
}

int principal_number(int N, Parity parity, int p) {
  return 2 * N + 2 + parity_index(parity) - p;
}

int root_index_of_branch(int N, Parity parity, int p) {
  require_order(N);
  const int shifted = p - parity_index(parity);
  if (shifted < 2 || shifted % 2 != 0 || shifted / 2 - 1 > N)
    throw std::invalid_argument("p = " + std::to_string(p) + " is not a branch of N = " +
                                std::to_string(N) + " (" + to_string(parity) + ")");
  return shifted / 2 - 1;
}

TruncationValue truncation_value(int N, Parity parity, double d, double g) {
  require_order(N);
  const auto params = heun_parameters(g, d, parity, quantized_energy(N, parity).k_squared);
  double v_prev2 = 0.0, dv_prev2 = 0.0;
  double v_prev = 1.0, dv_prev = 0.0;
  for (int n = 1; n <= N + 1; ++n) {
    const auto t = recurrence_coefficients(params, n);
    const double slope = -1.0 / (4.0 * n * n);
    const double v = (t.b * v_prev + t.c * v_prev2) / t.a;
    const double dv = (slope * v_prev + t.b * dv_prev + t.c * dv_prev2) / t.a;
    v_prev2 = v_prev;
    dv_prev2 = dv_prev;
    v_prev = v;
    dv_prev = dv;
  }
  return {v_prev, dv_prev, v_prev2};
}

std::vector<CouplingRoot> coupling_roots(int N, Parity parity, double d) {
  require_order(N);
  require_cutoff(d);
  const double k2 = quantized_energy(N, parity).k_squared;
  const Polynomial truncation = heun_series_in_g(d, parity, k2, N + 1).as_poly_in_g.back();

  // Roots grow like 4 d^2; work in h = g / scale for a better-conditioned
  // companion matrix.
  const double scale = 1.0 + 4.0 * d * d;
  const auto raw = companion_roots(truncation.scaled_argument(scale));

  std::vector<double> real_roots;
  for (const auto& z : raw) {
    const double g0 = z.real() * scale;
    if (std::abs(z.imag()) > 1e-4 * (1.0 + std::abs(z.real()))) continue;
    double g = g0;
    for (int iter = 0; iter < 60; ++iter) {
      const auto tv = truncation_value(N, parity, d, g);
      if (tv.derivative == 0.0) break;
      const double step = tv.value / tv.derivative;
      g -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(g))) break;
    }
    if (!std::isfinite(g)) continue;
    real_roots.push_back(g);
  }
  std::sort(real_roots.begin(), real_roots.end());
  real_roots.erase(std::unique(real_roots.begin(), real_roots.end(),
                               [](double a, double b) {
                                 return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
                               }),
                   real_roots.end());

  if (static_cast<int>(real_roots.size()) != N + 1)
    throw NumericalError("coupling_roots: expected " + std::to_string(N + 1) +
                         " real roots for N = " + std::to_string(N) + ", found " +
                         std::to_string(real_roots.size()) + " at d = " + std::to_string(d));

  std::vector<CouplingRoot> out;
  out.reserve(real_roots.size());
  for (std::size_t j = 0; j < real_roots.size(); ++j)
    out.push_back({branch_label(parity, static_cast<int>(j)), real_roots[j]});
  return out;
}

std::vector<double> cleared_series(int N, Parity parity, double d, double g) {
  require_order(N);
  require_cutoff(d);
  const double k2 = quantized_energy(N, parity).k_squared;
  const auto params = heun_parameters(g, d, parity, k2);
  const double s = (params.beta + params.gamma) / 2.0;
  const double d2 = d * d;

  // A_n d^2 w_n = -B_n w_{n-1} + c_n w_{n-2}, with C_n = d^2 c_n.
  std::vector<double> w(static_cast<std::size_t>(N) + 2, 0.0);
  w[N] = 1.0;
  for (int n = N + 1; n >= 2; --n) {
    const auto t = recurrence_coefficients(params, n);
    const double c_reduced = (n - 1.0 + s - k2 / 4.0) / (static_cast<double>(n) * n);
    w[n - 2] = (t.a * d2 * w[n] + t.b * w[n - 1]) / c_reduced;
  }
  w.pop_back();
  return w;
}

double downward_residual(int N, Parity parity, double d, double g) {
  const auto w = cleared_series(N, parity, d, g);
  const auto params = heun_parameters(g, d, parity, quantized_energy(N, parity).k_squared);
  const auto t = recurrence_coefficients(params, 1);
  const double w1 = N >= 1 ? w[1] : 0.0;
  return t.a * d * d * w1 + t.b * w[0];
}

IsoenergeticCurve isoenergetic_curve(int N, Parity parity, int p,
                                     std::span<const double> d_grid) {
  const int index = root_index_of_branch(N, parity, p);
  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    require_cutoff(d_grid[i]);
    if (i > 0 && !(d_grid[i] > d_grid[i - 1]))
      throw std::invalid_argument("isoenergetic_curve: d grid must be strictly ascending");
  }

  IsoenergeticCurve curve;
  curve.N = N;
  curve.parity = parity;
  curve.p = p;
  curve.energy = quantized_energy(N, parity).total;
  curve.samples.reserve(d_grid.size());

  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    const double d = d_grid[i];
    const auto roots = coupling_roots(N, parity, d);
    double g = roots[index].g;
    if (i > 0) {
      const double last = curve.samples.back().g;
      g = std::min_element(roots.begin(), roots.end(),
                           [last](const auto& a, const auto& b) {
                             return std::abs(a.g - last) < std::abs(b.g - last);
                           })->g;
    }
    if (i >= 2) {
      const auto& s0 = curve.samples[i - 2];
      const auto& s1 = curve.samples[i - 1];
      const double slope = (s1.g - s0.g) / (s1.d * s1.d - s0.d * s0.d);
      const double predicted = std::abs(slope) * (d * d - s1.d * s1.d);
      const double jump = std::abs(g - s1.g);
      if (jump > 10.0 * predicted + 1e-9 * (1.0 + std::abs(s1.g)))
        throw NumericalError("isoenergetic_curve: branch p = " + std::to_string(p) +
                             " jumps at d = " + std::to_string(d));
    }
    curve.samples.push_back({d, g});
  }
  return curve;
}

}  // namespace regcal
