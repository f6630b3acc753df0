#include "regcal/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "regcal/entropy.hpp"
#include "regcal/heun.hpp"
#include "regcal/rdm.hpp"
#include "regcal/variational.hpp"
#include "regcal/wavefunction.hpp"

namespace regcal::acceptance {

namespace {

// Pinned tolerances.
constexpr double kCalogeroTol = 1e-10;
constexpr double kClosedFormTol = 1e-9;
constexpr double kCouplingTol = 1e-9;
constexpr double kEnergyTol = 1e-8;
constexpr double kRankThreshold = 1e-8;
constexpr double kNullTol = 1e-3;
constexpr double kRenyiTwoTol = 1e-10;
constexpr double kVonNeumannOracle = 1.1546817692;
constexpr double kVonNeumannTol = 1e-4;
constexpr double kRenyiLimitTol = 1e-3;
constexpr double kExponentTarget = 2.0;
constexpr double kExponentTol = 0.1;
constexpr double kLargeCutoffLambda = 0.99;
constexpr double kLargeCutoffSym = 0.1;
constexpr double kLargeCutoffAnti = 0.05;

constexpr double kSweepStep = 0.05;
constexpr double kSweepMax = 30.0;

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

double max_abs_diff(const std::vector<double>& got, const std::vector<double>& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
    const double a = i < got.size() ? got[i] : 0.0;
    const double b = i < want.size() ? want[i] : 0.0;
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

// Symmetric ground-state sweeps shared by the null-point, entropy and kink checks.
struct SweepCache {
  int threads = 1;
  SolverConfig config;
  struct Entry {
    double d2;
    SweepTable table;
    std::shared_ptr<const RelativeHamiltonian> hamiltonian;
    std::vector<NullPoint> nulls;
  };
  std::deque<Entry> entries;  // stable references across insertions

  const Entry& at(double d2) {
    for (const auto& e : entries)
      if (e.d2 == d2) return e;
    const double d = std::sqrt(d2);
    std::vector<double> grid;
    for (int i = 0; i * kSweepStep <= kSweepMax + 1e-12; ++i) grid.push_back(i * kSweepStep);
    Entry e{d2, sweep(d, grid, config, 12, {}, threads),
            std::make_shared<const RelativeHamiltonian>(d, config), {}};
    e.nulls = null_point_detect(e.table, kRankThreshold, make_probe(e.hamiltonian, 12));
    entries.push_back(std::move(e));
    return entries.back();
  }
};

std::optional<double> nearest_null(const std::vector<NullPoint>& nulls, double target) {
  std::optional<double> best;
  for (const auto& n : nulls)
    if (!best || std::abs(n.g - target) < std::abs(*best - target)) best = n.g;
  return best;
}

CriterionResult calogero_symmetric() {
  const auto got = state_spectrum(build_relative_state(0, Parity::Symmetric, 2, 0.0));
  const double r3 = std::sqrt(3.0);
  const std::vector<double> want{(2 + r3) / 6, 1.0 / 3, (2 - r3) / 6};
  const double err = max_abs_diff(got.eigenvalues, want);
  return {1, "Calogero-limit spectrum (symmetric)", err <= kCalogeroTol,
          "max|err| = " + fmt("%.2e", err)};
}

CriterionResult calogero_antisymmetric() {
  const auto got = state_spectrum(build_relative_state(0, Parity::Antisymmetric, 3, 0.0));
  const double r = std::sqrt(22.0);
  const std::vector<double> want{(5 + r) / 20, (5 + r) / 20, (5 - r) / 20, (5 - r) / 20};
  const double err = max_abs_diff(got.eigenvalues, want);
  bool doubled = got.groups.size() >= 2 && got.groups[0].second == 2 && got.groups[1].second == 2;
  return {2, "Calogero-limit spectrum (antisymmetric)", err <= kCalogeroTol && doubled,
          "max|err| = " + fmt("%.2e", err) + (doubled ? ", multiplicities 2,2" : ", multiplicity mismatch")};
}

CriterionResult closed_form_vs_pipeline() {
  double worst = 0.0;
  for (double d2 : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double d = std::sqrt(d2);
    for (auto [parity, p] : {std::pair{Parity::Symmetric, 2}, std::pair{Parity::Antisymmetric, 3}}) {
      const auto pipeline = state_spectrum(build_relative_state(0, parity, p, d));
      const auto closed = exact_spectrum(0, parity, d);
      worst = std::max(worst, max_abs_diff(pipeline.eigenvalues, closed.eigenvalues));
    }
  }
  return {3, "Closed-form vs pipeline spectra", worst <= kClosedFormTol,
          "max|err| = " + fmt("%.2e", worst) + " over 6 cutoffs, both parities"};
}

CriterionResult coupling_curves() {
  double worst = 0.0;
  for (int i = 0; i <= 120; ++i) {
    const double d2 = 0.05 * i;
    const double d = std::sqrt(d2);
    const double disc = std::sqrt(25 - 12 * d2 + 4 * d2 * d2);
    const auto s0 = coupling_roots(0, Parity::Symmetric, d);
    const auto s1 = coupling_roots(1, Parity::Symmetric, d);
    const auto a0 = coupling_roots(0, Parity::Antisymmetric, d);
    worst = std::max({worst, std::abs(s0[0].g - (2 + 4 * d2)),
                      std::abs(s1[0].g - (7 + 6 * d2 - disc)),
                      std::abs(s1[1].g - (7 + 6 * d2 + disc)),
                      std::abs(a0[0].g - (6 + 4 * d2))});
  }
  double worst_zero = 0.0;
  int labeled = 0;
  for (auto parity : {Parity::Symmetric, Parity::Antisymmetric})
    for (int N = 0; N <= 2; ++N)
      for (const auto& root : coupling_roots(N, parity, 0.0)) {
        if (root.p > 6) continue;
        worst_zero = std::max(worst_zero, std::abs(root.g - root.p * (root.p - 1.0)));
        ++labeled;
      }
  return {4, "Coupling curves", worst <= kCouplingTol && worst_zero <= kCouplingTol,
          "curves max|err| = " + fmt("%.2e", worst) + ", d=0 p(p-1) max|err| = " +
              fmt("%.2e", worst_zero) + " over " + std::to_string(labeled) + " roots"};
}

CriterionResult variational_energies() {
  double worst = 0.0;
  for (double d2 : {0.5, 2.0}) {
    const double d = std::sqrt(d2);
    struct Case { int N; Parity parity; int p; double e; };
    for (const Case& c : {Case{0, Parity::Symmetric, 2, 2.5}, Case{1, Parity::Symmetric, 4, 4.5},
                          Case{0, Parity::Antisymmetric, 3, 3.5}}) {
      const auto roots = coupling_roots(c.N, c.parity, d);
      const double g = roots[root_index_of_branch(c.N, c.parity, c.p)].g;
      SolverConfig config;
      config.parity = c.parity;
      worst = std::max(worst, std::abs(ground_state(g, d, config).energy - c.e));
    }
  }
  return {5, "Variational energies (M = 150)", worst <= kEnergyTol,
          "max|E - k^2/2| = " + fmt("%.2e", worst)};
}

CriterionResult rank_law() {
  std::ostringstream detail;
  bool ok = true;
  struct Case { int N; Parity parity; int p; int rank; };
  const Case cases[] = {{0, Parity::Symmetric, 2, 3}, {1, Parity::Symmetric, 2, 5},
                        {1, Parity::Symmetric, 4, 5}, {0, Parity::Antisymmetric, 3, 4}};
  for (double d2 : {0.5, 2.0}) {
    const double d = std::sqrt(d2);
    for (const auto& c : cases) {
      const auto state = build_relative_state(c.N, c.parity, c.p, d);
      const int exact_rank = state_spectrum(state).rank(kRankThreshold);
      ok = ok && exact_rank == c.rank;
      detail << exact_rank;
      // The lower N = 1 branch is an excited state, out of reach of the ground-state solver.
      if (!(c.N == 1 && c.p == 2)) {
        SolverConfig config;
        config.parity = c.parity;
        const int var_rank =
            variational_spectrum(ground_state(state.label().g, d, config)).rank(kRankThreshold);
        ok = ok && var_rank == c.rank;
        detail << "/" << var_rank;
      }
      detail << ' ';
    }
  }
  return {6, "Rank law at quasi-exact points", ok,
          "closed/variational ranks " + detail.str() + "(want 3, 5, 5, 4 per cutoff)"};
}

CriterionResult null_point_drift(SweepCache& cache) {
  const double r17 = std::sqrt(17.0);
  const double pinned[] = {10.0, 19 - r17, 19 + r17};
  struct Branch { int N; int p; };
  const Branch branches[] = {{0, 2}, {1, 2}, {1, 4}};

  const auto& high = cache.at(2.0);
  const auto& low = cache.at(0.5);
  bool ok = true;
  std::ostringstream detail;
  detail << "d2=2:";
  for (int b = 0; b < 3; ++b) {
    const auto [N, p] = branches[b];
    const double target_hi = coupling_roots(N, Parity::Symmetric, std::sqrt(2.0))
                                 [root_index_of_branch(N, Parity::Symmetric, p)].g;
    const double target_lo = coupling_roots(N, Parity::Symmetric, std::sqrt(0.5))
                                 [root_index_of_branch(N, Parity::Symmetric, p)].g;
    ok = ok && std::abs(target_hi - pinned[b]) <= kNullTol;
    const auto hi = nearest_null(high.nulls, target_hi);
    const auto lo = nearest_null(low.nulls, target_lo);
    const bool hit_hi = hi && std::abs(*hi - target_hi) <= kNullTol;
    const bool hit_lo = lo && std::abs(*lo - target_lo) <= kNullTol;
    ok = ok && hit_hi && hit_lo && *lo < *hi;
    detail << ' ' << fmt("%.3f", target_hi);
    if (hit_hi) {
      detail << " found";
    } else {
      // Depth of any dip there: lambda_k at the target relative to its
      // value 0.5 away, minimized over the trailing eigenvalues.
      const auto probe = make_probe(high.hamiltonian, 12);
      const auto at = probe(target_hi), left = probe(target_hi - 0.5), right = probe(target_hi + 0.5);
      double dip = 1e300;
      for (std::size_t i = 2; i < at.size(); ++i)
        dip = std::min(dip, at[i] / std::min(left[i], right[i]));
      detail << " MISSING (deepest dip ratio there " << fmt("%.2f", dip) << ")";
    }
    if (!hit_lo) detail << " (d2=0.5 partner " << fmt("%.3f", target_lo) << " missing)";
  }
  detail << "; detected d2=2 {";
  for (const auto& n : high.nulls) detail << ' ' << fmt("%.5f", n.g);
  detail << " } d2=0.5 {";
  for (const auto& n : low.nulls) detail << ' ' << fmt("%.5f", n.g);
  detail << " }";
  return {7, "Null-point drift", ok, detail.str()};
}

CriterionResult entropy_identities(SweepCache& cache) {
  const auto spectrum = state_spectrum(build_relative_state(0, Parity::Symmetric, 2, 0.0));
  const double s2 = renyi_entropy(spectrum, 2.0).value;
  const double svn = von_neumann_entropy(spectrum).value;

  double worst_limit = 0.0;
  int tested = 0;
  auto check_limit = [&](const std::vector<double>& eigenvalues) {
    const double v = von_neumann_entropy(eigenvalues).value;
    for (double a : {1 - 1e-4, 1 + 1e-4})
      worst_limit = std::max(worst_limit, std::abs(renyi_entropy(eigenvalues, a).value - v));
    ++tested;
  };
  for (double d2 : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    check_limit(exact_spectrum(0, Parity::Symmetric, std::sqrt(d2)).eigenvalues);
    check_limit(exact_spectrum(0, Parity::Antisymmetric, std::sqrt(d2)).eigenvalues);
  }
  const auto& table = cache.at(2.0).table;
  for (std::size_t i = 0; i < table.rows.size(); i += 10)
    if (table.rows[i].ok) check_limit(table.rows[i].eigenvalues);

  const bool ok = std::abs(s2 - 1.0) <= kRenyiTwoTol &&
                  std::abs(svn - kVonNeumannOracle) <= kVonNeumannTol &&
                  worst_limit <= kRenyiLimitTol;
  return {8, "Entropy identities", ok,
          "S^2 - 1 = " + fmt("%.2e", s2 - 1.0) + ", S_vN = " + fmt("%.10f", svn) +
              ", max|S^(1+-1e-4) - S_vN| = " + fmt("%.2e", worst_limit) + " over " +
              std::to_string(tested) + " spectra"};
}

CriterionResult kink_asymptotics(SweepCache& cache) {
  const auto& entry = cache.at(0.5);
  if (entry.nulls.empty()) return {9, "Kink asymptotics", false, "no null point detected at d2=0.5"};
  const NullPoint& first = entry.nulls.front();
  const auto probe = make_probe(entry.hamiltonian, 12);

  const auto samples = sample_around(probe, first.g, first.eigen_index, 40);
  const auto report = kink_analysis(samples.g, samples.lambda, first.g, 0.2);
  const bool exponent_ok = std::abs(report.exponent_fit - kExponentTarget) <= kExponentTol;

  auto entropy_at = [&](double g, double a) { return renyi_entropy(probe(g), a).value; };
  const double s_low = entropy_at(first.g, 0.2);
  const double s_two = entropy_at(first.g, 2.0);
  bool growing = true;
  bool bounded = true;
  double prev_right = 0.0, prev_left = 0.0, first_d2 = 0.0;
  std::ostringstream detail;
  detail << "g_n = " << fmt("%.6f", first.g) << ", 2k_m = " << fmt("%.4f", report.exponent_fit)
         << " (" << to_string(report.derivative_class) << "); dS^0.2 right/left:";
  for (int k = 0; k < 4; ++k) {
    const double delta = 1e-2 / std::pow(2.0, k);
    const double right = (entropy_at(first.g + delta, 0.2) - s_low) / delta;
    const double left = (s_low - entropy_at(first.g - delta, 0.2)) / delta;
    if (k > 0) growing = growing && std::abs(right) > std::abs(prev_right) &&
                         std::abs(left) > std::abs(prev_left);
    prev_right = right;
    prev_left = left;
    detail << ' ' << fmt("%.3g", right) << '/' << fmt("%.3g", left);

    const double second = (entropy_at(first.g + delta, 2.0) - 2 * s_two +
                           entropy_at(first.g - delta, 2.0)) / (delta * delta);
    if (k == 0) first_d2 = second;
    bounded = bounded && std::abs(second - first_d2) <= 0.5 * std::abs(first_d2) + 1e-6;
    if (k == 3) detail << "; d2S^2 " << fmt("%.4g", first_d2) << " -> " << fmt("%.4g", second);
  }
  return {9, "Kink asymptotics", exponent_ok && growing && bounded &&
                                     report.derivative_class == DerivativeClass::Divergent,
          detail.str()};
}

CriterionResult large_cutoff_limits() {
  const double d = 10.0;
  const auto sym = state_spectrum(build_relative_state(0, Parity::Symmetric, 2, d));
  const auto anti = state_spectrum(build_relative_state(0, Parity::Antisymmetric, 3, d));
  const double lmax = sym.eigenvalues.front();
  const double s_sym = von_neumann_entropy(sym).value;
  const double s_anti = von_neumann_entropy(anti).value;
  const bool ok = lmax >= kLargeCutoffLambda && s_sym <= kLargeCutoffSym &&
                  std::abs(s_anti - 1.0) <= kLargeCutoffAnti;
  return {10, "Large-cutoff limits (d2 = 100)", ok,
          "sym lambda_max = " + fmt("%.6f", lmax) + ", sym S_vN = " + fmt("%.4f", s_sym) +
              ", antisym S_vN = " + fmt("%.4f", s_anti)};
}

CriterionResult timed(int id, const std::string& title, const std::function<CriterionResult()>& f) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  try {
    result = f();
  } catch (const std::exception& e) {
    result = {id, title, false, std::string("exception: ") + e.what()};
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

std::vector<CriterionResult> run_all(int threads) {
  SweepCache cache;
  cache.threads = threads;
  std::vector<CriterionResult> out;
  out.push_back(timed(1, "Calogero-limit spectrum (symmetric)", calogero_symmetric));
  out.push_back(timed(2, "Calogero-limit spectrum (antisymmetric)", calogero_antisymmetric));
  out.push_back(timed(3, "Closed-form vs pipeline spectra", closed_form_vs_pipeline));
  out.push_back(timed(4, "Coupling curves", coupling_curves));
  out.push_back(timed(5, "Variational energies (M = 150)", variational_energies));
  out.push_back(timed(6, "Rank law at quasi-exact points", rank_law));
  out.push_back(timed(7, "Null-point drift", [&] { return null_point_drift(cache); }));
  out.push_back(timed(8, "Entropy identities", [&] { return entropy_identities(cache); }));
  out.push_back(timed(9, "Kink asymptotics", [&] { return kink_asymptotics(cache); }));
  out.push_back(timed(10, "Large-cutoff limits (d2 = 100)", large_cutoff_limits));
  return out;
}

std::string format(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s  %2d  %-40s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace regcal::acceptance
