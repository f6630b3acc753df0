#include "regcal/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "regcal/parity.hpp"

namespace regcal {

EntropyResult von_neumann_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double v : eigenvalues)
    if (v >= kEntropyFloor) s -= v * std::log2(v);
  return {1.0, std::max(s, 0.0), EntropyMethod::VonNeumann};
}

EntropyResult von_neumann_entropy(const EntanglementSpectrum& spectrum) {
  return von_neumann_entropy(spectrum.eigenvalues);
}

EntropyResult renyi_entropy(std::span<const double> eigenvalues, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("Renyi order must be positive");
  if (std::abs(a - 1.0) < 1e-6) return von_neumann_entropy(eigenvalues);
  double sum = 0.0;
  for (double v : eigenvalues)
    if (v >= kEntropyFloor) sum += std::pow(v, a);
  const double value = std::log2(sum) / (1.0 - a);
  return {a, std::max(value, 0.0), EntropyMethod::Renyi};
}

EntropyResult renyi_entropy(const EntanglementSpectrum& spectrum, double a) {
  return renyi_entropy(spectrum.eigenvalues, a);
}

std::vector<EntropyCurveRow> entropy_curve(
    std::span<const std::pair<double, EntanglementSpectrum>> spectra,
    std::span<const double> orders) {
  std::vector<EntropyCurveRow> rows;
  rows.reserve(spectra.size());
  for (const auto& [g, spectrum] : spectra) {
    EntropyCurveRow row;
    row.g = g;
    row.von_neumann = von_neumann_entropy(spectrum).value;
    for (double a : orders) row.renyi.push_back(renyi_entropy(spectrum, a).value);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_string(DerivativeClass c) {
  switch (c) {
    case DerivativeClass::Divergent: return "divergent";
    case DerivativeClass::FiniteJump: return "finite_jump";
    case DerivativeClass::Smooth: return "smooth";
  }
  return "unknown";
}

DerivativeClass classify_kink(double a, double k_m) {
  const double chi_k = 2.0 * a * k_m;
  if (std::abs(chi_k - 1.0) <= 1e-9) return DerivativeClass::FiniteJump;
  return chi_k < 1.0 ? DerivativeClass::Divergent : DerivativeClass::Smooth;
}

KinkReport kink_analysis(std::span<const double> g, std::span<const double> eigenvalue,
                         double g_n, double a) {
  if (g.size() != eigenvalue.size())
    throw std::invalid_argument("kink_analysis: g and eigenvalue columns differ in length");
  if (!(a > 0.0)) throw std::invalid_argument("kink_analysis: order must be positive");

  constexpr double kLower = 1e-3, kUpper = 1e-1;
  int left = 0, right = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int n = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double offset = std::abs(g[i] - g_n);
    // Small relative slack so log-spaced window edges are kept.
    if (offset < kLower * (1.0 - 1e-9) || offset > kUpper * (1.0 + 1e-9)) continue;
    if (!(eigenvalue[i] > 0.0)) continue;
    (g[i] < g_n ? left : right)++;
    const double x = std::log(offset), y = std::log(eigenvalue[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  if (left < 20 || right < 20)
    throw std::invalid_argument("kink_analysis: need >= 20 samples per side in the window (got " +
                                std::to_string(left) + " / " + std::to_string(right) + ")");

  const double mx = sx / n, my = sy / n;
  const double cxx = sxx / n - mx * mx, cxy = sxy / n - mx * my, cyy = syy / n - my * my;
  const double slope = cxy / cxx;
  const double r2 = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  const double resid_var = std::max(cyy - slope * cxy, 0.0) * n / std::max(n - 2, 1);
  const double stderr_slope = std::sqrt(resid_var / (cxx * n));

  KinkReport report;
  report.g_n = g_n;
  report.a = a;
  report.exponent_fit = slope;
  report.exponent_stderr = stderr_slope;
  report.k_m_fit = slope / 2.0;
  report.r_squared = r2;
  report.points_used = n;
  if (r2 < 0.99)
    throw NumericalError("kink_analysis: log-log fit rejected (R^2 = " + std::to_string(r2) + ")");

  const double snapped = std::round(report.k_m_fit);
  const double k_m = std::abs(report.k_m_fit - snapped) <= 0.05 && snapped >= 1.0
                         ? snapped
                         : report.k_m_fit;
  report.derivative_class = classify_kink(a, k_m);
  return report;
}

}  // namespace regcal
