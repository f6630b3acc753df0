#pragma once

#include <complex>
#include <span>
#include <vector>

namespace regcal {

/// Dense univariate polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  static Polynomial constant(double value) { return Polynomial({value}); }
  /// a + b*x
  static Polynomial linear(double a, double b) { return Polynomial({a, b}); }

  [[nodiscard]] int degree() const noexcept;
  [[nodiscard]] std::span<const double> coefficients() const noexcept {
    return coeffs_;
  }
  [[nodiscard]] double operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }

  [[nodiscard]] double operator()(double x) const noexcept;
  [[nodiscard]] Polynomial derivative() const;
  /// p(s*x): rescales the variable.
  [[nodiscard]] Polynomial scaled_argument(double s) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double factor);
  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    return lhs += rhs;
  }
  friend Polynomial operator*(Polynomial lhs, double factor) {
    return lhs *= factor;
  }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

 private:
  std::vector<double> coeffs_;
};

/// All complex roots of p from the eigenvalues of its balanced companion
/// matrix. Throws std::invalid_argument for the zero polynomial.
std::vector<std::complex<double>> companion_roots(const Polynomial& p);

}  // namespace regcal
