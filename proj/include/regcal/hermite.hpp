#pragma once

#include <memory>
#include <vector>

namespace regcal {

/// Orthonormal Hermite functions psi_0 .. psi_{count-1} at x, via the
/// three-term recurrence (no factorials, stable for large index).
std::vector<double> hermite_functions(int count, double x);

/// Gauss-Hermite rule for weight exp(-x^2).
///
/// `scaled_weights` are w_k exp(x_k^2), i.e. the weights to use when the
/// integrand already carries the Gaussian: int f = sum_k ws_k f(x_k) for
/// f = exp(-x^2) * poly. They are computed from the Christoffel function of
/// the Hermite functions, which never underflows.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Golub-Welsch nodes polished by Newton on psi_n; rules are cached and
/// shared (thread-safe).
std::shared_ptr<const GaussHermiteRule> gauss_hermite(int n);

/// Nodes needed to integrate exp(-x^2) * poly(degree) exactly.
constexpr int exact_node_count(int degree) noexcept { return degree / 2 + 1; }

}  // namespace regcal
