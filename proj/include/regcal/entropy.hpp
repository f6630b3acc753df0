#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regcal/rdm.hpp"

namespace regcal {

enum class EntropyMethod { Renyi, VonNeumann };

struct EntropyResult {
  double a = 1.0;  // order; 1 for von Neumann
  double value = 0.0;  // bits
  EntropyMethod method = EntropyMethod::VonNeumann;
};

/// Eigenvalues below this are left out of entropy sums.
inline constexpr double kEntropyFloor = 1e-14;

/// S^a = log2(sum lambda^a) / (1 - a). Orders with |a - 1| < 1e-6 are
/// evaluated as von Neumann. Throws std::invalid_argument for a <= 0.
EntropyResult renyi_entropy(std::span<const double> eigenvalues, double a);
EntropyResult renyi_entropy(const EntanglementSpectrum& spectrum, double a);

/// -sum lambda log2 lambda, 0 log 0 = 0.
EntropyResult von_neumann_entropy(std::span<const double> eigenvalues);
EntropyResult von_neumann_entropy(const EntanglementSpectrum& spectrum);

struct EntropyCurveRow {
  double g = 0.0;
  double von_neumann = 0.0;
  std::vector<double> renyi;  // one per requested order
};

std::vector<EntropyCurveRow> entropy_curve(
    std::span<const std::pair<double, EntanglementSpectrum>> spectra,
    std::span<const double> orders);

enum class DerivativeClass { Divergent, FiniteJump, Smooth };

std::string to_string(DerivativeClass c);

/// Result of fitting lambda ~ C |g - g_n|^{2k} next to a finite-spectrum
/// coupling g_n.
struct KinkReport {
  double g_n = 0.0;
  double a = 0.0;
  double exponent_fit = 0.0;  // 2 k_m
  double exponent_stderr = 0.0;
  double k_m_fit = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  DerivativeClass derivative_class = DerivativeClass::Smooth;
};

/// Least squares of log lambda against log |g - g_n| over the window
/// 1e-3 <= |g - g_n| <= 1e-1. Needs >= 20 samples on each side; throws
/// std::invalid_argument otherwise and NumericalError if R^2 < 0.99.
///
/// The class follows chi k_m with chi = 2a: divergent below 1, a finite
/// jump at 1, smooth above. k_m is snapped to the nearest integer when the
/// fit lies within 0.05 of it (the exponents are even integers).
KinkReport kink_analysis(std::span<const double> g, std::span<const double> eigenvalue,
                         double g_n, double a);

DerivativeClass classify_kink(double a, double k_m);

}  // namespace regcal
