#pragma once

// Heun reduction of the relative Hamiltonian
//
//   H_x = -1/2 d^2/dx^2 + x^2/2 + (g/2) / (x^2 + d^2).
//
// With z = (x/d)^2, psi = exp(-d^2 z / 2) x^sigma y(z), xi = -z and
// y = (1 - xi) f(xi), f solves the confluent Heun equation in standard
// form. Polynomial f of degree N exists only when the energy is quantized
// (C_{N+2} = 0) and the coupling g is a root of v_{N+1}(g).

#include <span>
#include <vector>

#include "regcal/parity.hpp"
#include "regcal/polynomial.hpp"

namespace regcal {

struct HeunParameters {
  double alpha = 0.0;  // d^2
  double beta = 0.0;   // -1/2 symmetric, +1/2 antisymmetric
  double gamma = 1.0;
  double mu = 0.0;
  double nu = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double k_squared = 0.0;  // 2 E_x
  double coupling = 0.0;   // g
  Parity parity = Parity::Symmetric;
};

/// eta and delta come from their closed forms; mu and nu are then fixed by
/// the standard-form identities so all seven constants are consistent for
/// either parity. Throws std::invalid_argument unless d >= 0, k^2 > 0.
HeunParameters heun_parameters(double g, double d, Parity parity, double k_squared);

struct RecurrenceTerms {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// A_n, B_n, C_n of A_n v_n = B_n v_{n-1} + C_n v_{n-2}, n >= 1.
/// C_n is evaluated as (delta + alpha (s + n - 1)) / n^2 so that alpha = 0
/// is well defined.
RecurrenceTerms recurrence_coefficients(const HeunParameters& params, int n);

struct SeriesCoefficients {
  std::vector<double> v;
  /// v_n as a polynomial in g (empty unless requested).
  std::vector<Polynomial> as_poly_in_g;
};

/// v_0 .. v_{n_max} from the upward recurrence, v_0 = 1, v_{-1} = 0.
SeriesCoefficients heun_series(const HeunParameters& params, int n_max);

/// Same recurrence with g kept symbolic: returns v_0(g) .. v_{n_max}(g) as
/// exact polynomials (degree n) for fixed d, parity and k^2, together with
/// the numeric values at params.coupling.
SeriesCoefficients heun_series_in_g(double d, Parity parity, double k_squared,
                                    int n_max, double g_eval = 0.0);

struct QuantizedEnergy {
  double k_squared = 0.0;  // 4N + 6 -/+ 1
  double total = 0.0;      // E_N = E_x + 1/2
};

QuantizedEnergy quantized_energy(int N, Parity parity);

/// Branch label p of root index j (0-based, ascending in g) for truncation
/// order N: p = 2(j+1) for symmetric, 2(j+1)+1 for antisymmetric.
int branch_label(Parity parity, int root_index);
/// Principal quantum number n of the Calogero limit, from n + p = 2N + (5 -/+ 1)/2.
int principal_number(int N, Parity parity, int p);
/// Inverse of branch_label; throws std::invalid_argument if p is not a
/// branch of (N, parity).
int root_index_of_branch(int N, Parity parity, int p);

struct CouplingRoot {
  int p = 0;
  double g = 0.0;
};

/// Real roots of v_{N+1}(g) at k = k_N, ascending, labeled by branch p.
/// The polynomial is built exactly in g, its roots found with the
/// companion matrix and polished by Newton on the numeric recurrence.
/// Throws NumericalError if fewer or more than N+1 real roots survive.
std::vector<CouplingRoot> coupling_roots(int N, Parity parity, double d);

/// v_{N+1}(g) and its g-derivative from the numeric recurrence at k = k_N.
struct TruncationValue {
  double value = 0.0;
  double derivative = 0.0;
  double previous = 0.0;  // v_N
};
TruncationValue truncation_value(int N, Parity parity, double d, double g);

/// Coefficients w_0 .. w_N of sum_n w_n t^n (t = x^2), proportional to
/// v_n (-1)^n d^{2(N-n)}, obtained by running the recurrence downward from
/// w_N = 1, w_{N+1} = 0. Regular at d = 0.
std::vector<double> cleared_series(int N, Parity parity, double d, double g);

/// Left-over n = 1 equation of the downward recurrence; vanishes exactly
/// at the coupling roots (independent of the upward route).
double downward_residual(int N, Parity parity, double d, double g);

struct CurveSample {
  double d = 0.0;
  double g = 0.0;
};

struct IsoenergeticCurve {
  int N = 0;
  Parity parity = Parity::Symmetric;
  int p = 0;
  double energy = 0.0;  // total E_N, constant along the curve
  std::vector<CurveSample> samples;
};

/// Follows branch p over an ascending cutoff grid by nearest-root matching.
/// Throws NumericalError when a step jumps by more than ten times the step
/// predicted from the previous two samples.
IsoenergeticCurve isoenergetic_curve(int N, Parity parity, int p,
                                     std::span<const double> d_grid);

}  // namespace regcal
