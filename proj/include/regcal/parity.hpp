#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regcal {

/// Exchange symmetry of the two-particle state. The relative-coordinate
/// wavefunction is even for Symmetric and odd for Antisymmetric.
enum class Parity { Symmetric, Antisymmetric };

/// Heun beta: -1/2 for even states, +1/2 for odd ones.
constexpr double heun_beta(Parity parity) noexcept {
  return parity == Parity::Symmetric ? -0.5 : 0.5;
}

/// Power of x in front of the even polynomial (0 or 1).
constexpr int parity_index(Parity parity) noexcept {
  return parity == Parity::Symmetric ? 0 : 1;
}

inline std::string to_string(Parity parity) {
  return parity == Parity::Symmetric ? "sym" : "antisym";
}

inline Parity parse_parity(std::string_view text) {
  if (text == "sym" || text == "symmetric" || text == "s") return Parity::Symmetric;
  if (text == "antisym" || text == "antisymmetric" || text == "a")
    return Parity::Antisymmetric;
  throw std::invalid_argument("unknown parity '" + std::string(text) +
                              "' (expected sym or antisym)");
}

/// Raised when a numerical procedure cannot produce a trustworthy result
/// (root count mismatch, eigensolver failure, rejected fit).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace regcal
