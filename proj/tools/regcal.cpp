// Command-line driver: each subcommand writes CSV/JSON into --out plus a
// manifest.json listing them. Exit codes: 0 ok, 1 numerical or I/O
// failure, 2 bad arguments.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "regcal/acceptance.hpp"
#include "regcal/entropy.hpp"
#include "regcal/heun.hpp"
#include "regcal/io.hpp"
#include "regcal/parity.hpp"
#include "regcal/rdm.hpp"
#include "regcal/variational.hpp"
#include "regcal/wavefunction.hpp"

#ifndef REGCAL_VERSION
#define REGCAL_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace regcal;

namespace {

struct Run {
  std::string command;
  fs::path out_dir = ".";
  json parameters = json::object();
  std::vector<std::string> outputs;

  fs::path path(const std::string& name) {
    outputs.push_back(name);
    return out_dir / name;
  }
};

int thread_count() {
  const char* env = std::getenv("REGCAL_THREADS");
  if (!env || !*env) return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024)
    throw std::invalid_argument("REGCAL_THREADS must be a positive integer");
  return static_cast<int>(n);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_manifest(Run& run) {
  const json manifest = {{"command", run.command},
                         {"parameters", run.parameters},
                         {"output_paths", run.outputs},
                         {"tool_version", REGCAL_VERSION},
                         {"timestamp", utc_timestamp()}};
  write_json(run.out_dir / "manifest.json", manifest);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (!(hi > lo)) throw std::invalid_argument("range maximum must exceed minimum");
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) grid[i] = lo + (hi - lo) * i / steps;
  return grid;
}

void require_non_negative(const std::vector<double>& d2, const char* flag) {
  for (double v : d2)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(flag) + " values must be finite and >= 0");
}

// Default branch is the largest p of the tower: the nodeless, n = 0 state.
int resolve_branch(int N, Parity parity, std::optional<int> p) {
  if (N < 0) throw std::invalid_argument("--N must be >= 0");
  if (p) {
    root_index_of_branch(N, parity, *p);
    return *p;
  }
  return branch_label(parity, N);
}

json orders_json(const std::vector<double>& orders) { return orders; }

// exact-solve ---------------------------------------------------------------

struct ExactOptions {
  int N = 0;
  std::string parity = "sym";
  std::optional<int> p;
  std::vector<double> d2{0.0};
  double x_max = 5.0;
  int x_steps = 200;
};

void exact_solve(Run& run, const ExactOptions& o) {
  const Parity parity = parse_parity(o.parity);
  const int p = resolve_branch(o.N, parity, o.p);
  require_non_negative(o.d2, "--d2");
  if (!(o.x_max > 0.0)) throw std::invalid_argument("--x-max must be positive");
  const auto xs = linspace(-o.x_max, o.x_max, o.x_steps);
  run.parameters = {{"N", o.N}, {"parity", to_string(parity)}, {"p", p}, {"d2", o.d2},
                    {"x_max", o.x_max}, {"x_steps", o.x_steps}};

  json states = json::array();
  CsvTable profile;
  profile.metadata = {"relative wavefunction psi(x), normalized"};
  profile.columns = {"N", "parity", "p", "d2", "g", "x", "psi"};
  for (double d2 : o.d2) {
    const double d = std::sqrt(d2);
    const auto state = build_relative_state(o.N, parity, p, d);
    const auto spectrum = state_spectrum(state);
    json entry = to_json(state);
    entry["spectrum"] = to_json(spectrum);
    entry["residual_norm"] = residual_norm(state);
    entry["von_neumann_bits"] = von_neumann_entropy(spectrum).value;
    states.push_back(entry);

    std::printf("d2=%s g=%s E_total=%s spectrum:", format_short(d2).c_str(),
                format_short(state.label().g).c_str(),
                format_short(state.label().energy_total).c_str());
    for (double v : spectrum.eigenvalues) std::printf(" %.10f", v);
    std::printf("\n");

    for (double x : xs)
      profile.add_row({cell(o.N), to_string(parity), cell(p), cell(d2), cell(state.label().g),
                       cell(x), cell(state(x))});
  }
  write_json(run.path("states.json"), states);
  write_csv(run.path("wavefunction.csv"), profile);
}

// curves --------------------------------------------------------------------

struct CurveOptions {
  int N_max = 2;
  double d2_max = 6.0;
  int steps = 120;
  std::string parity = "both";
};

std::vector<Parity> parity_list(const std::string& text) {
  if (text == "both") return {Parity::Symmetric, Parity::Antisymmetric};
  return {parse_parity(text)};
}

void curves(Run& run, const CurveOptions& o) {
  if (o.N_max < 0) throw std::invalid_argument("--N-max must be >= 0");
  if (!(o.d2_max > 0.0)) throw std::invalid_argument("--d2-max must be positive");
  const auto parities = parity_list(o.parity);
  const auto d2_grid = linspace(0.0, o.d2_max, o.steps);
  std::vector<double> d_grid;
  for (double d2 : d2_grid) d_grid.push_back(std::sqrt(d2));
  run.parameters = {{"N_max", o.N_max}, {"d2_max", o.d2_max}, {"steps", o.steps},
                    {"parity", o.parity}};

  CsvTable table;
  table.metadata = {"isoenergetic coupling curves g_p^(N)(d); E_total constant per curve"};
  table.columns = {"N", "parity", "p", "n", "E_total", "d2", "g"};
  for (auto parity : parities)
    for (int N = 0; N <= o.N_max; ++N)
      for (int j = 0; j <= N; ++j) {
        const int p = branch_label(parity, j);
        const auto curve = isoenergetic_curve(N, parity, p, d_grid);
        const int n = principal_number(N, parity, p);
        for (std::size_t i = 0; i < curve.samples.size(); ++i)
          table.add_row({cell(N), to_string(parity), cell(p), cell(n), cell(curve.energy),
                         cell(d2_grid[i]), cell(curve.samples[i].g)});
      }
  write_csv(run.path("curves.csv"), table);
}

// rdm / entropy along a curve -------------------------------------------------

struct CurveStateOptions {
  int N = 0;
  std::string parity = "sym";
  std::optional<int> p;
  double d2_min = 0.0;
  double d2_max = 10.0;
  int steps = 100;
  std::vector<double> orders{0.5, 2.0};
};

void rdm_command(Run& run, const CurveStateOptions& o) {
  const Parity parity = parse_parity(o.parity);
  const int p = resolve_branch(o.N, parity, o.p);
  if (o.d2_min < 0.0) throw std::invalid_argument("--d2-min must be >= 0");
  const auto grid = linspace(o.d2_min, o.d2_max, o.steps);
  run.parameters = {{"N", o.N}, {"parity", to_string(parity)}, {"p", p},
                    {"d2_min", o.d2_min}, {"d2_max", o.d2_max}, {"steps", o.steps}};

  CsvTable table;
  table.metadata = {"natural occupation numbers of the one-body RDM along the curve"};
  table.columns = {"N", "parity", "p", "d2", "g", "index", "lambda"};
  json matrices = json::array();
  for (double d2 : grid) {
    const auto state = build_relative_state(o.N, parity, p, std::sqrt(d2));
    const auto rdm = state_rdm(state);
    const auto spectrum = rdm_spectrum(rdm);
    for (std::size_t i = 0; i < spectrum.size(); ++i)
      table.add_row({cell(o.N), to_string(parity), cell(p), cell(d2), cell(state.label().g),
                     cell(static_cast<int>(i) + 1), cell(spectrum.eigenvalues[i])});
    matrices.push_back({{"d2", d2}, {"g", state.label().g}, {"rho", to_json(rdm.rho)},
                        {"spectrum", to_json(spectrum)}});
  }
  write_csv(run.path("rdm_spectrum.csv"), table);
  write_json(run.path("rdm_matrices.json"), matrices);
}

void entropy_command(Run& run, const CurveStateOptions& o) {
  const Parity parity = parse_parity(o.parity);
  const int p = resolve_branch(o.N, parity, o.p);
  if (o.d2_min < 0.0) throw std::invalid_argument("--d2-min must be >= 0");
  for (double a : o.orders)
    if (!(a > 0.0)) throw std::invalid_argument("--a orders must be positive");
  const auto grid = linspace(o.d2_min, o.d2_max, o.steps);
  run.parameters = {{"N", o.N}, {"parity", to_string(parity)}, {"p", p},
                    {"d2_min", o.d2_min}, {"d2_max", o.d2_max}, {"steps", o.steps},
                    {"a", orders_json(o.orders)}};

  CsvTable table;
  table.metadata = {"entropies in bits; a = 1 rows are von Neumann",
                    "state N=" + std::to_string(o.N) + " parity=" + to_string(parity) +
                        " p=" + std::to_string(p)};
  table.columns = {"d2", "g", "a", "S"};
  for (double d2 : grid) {
    const auto state = build_relative_state(o.N, parity, p, std::sqrt(d2));
    const auto spectrum = state_spectrum(state);
    const double g = state.label().g;
    table.add_row({cell(d2), cell(g), cell(1.0), cell(von_neumann_entropy(spectrum).value)});
    for (double a : o.orders)
      table.add_row({cell(d2), cell(g), cell(a), cell(renyi_entropy(spectrum, a).value)});
  }
  write_csv(run.path("entropy.csv"), table);
}

// sweep ---------------------------------------------------------------------

struct SolverOptions {
  std::string parity = "sym";
  int M = 150;
  int nodes = 400;
  bool dvr = false;

  SolverConfig config() const {
    SolverConfig c;
    c.basis_size = M;
    c.quadrature_nodes = nodes;
    c.parity = parse_parity(parity);
    c.representation = dvr ? Representation::Dvr : Representation::Spectral;
    c.validate();
    return c;
  }
  json to_json() const {
    return {{"parity", parity}, {"M", M}, {"nodes", nodes},
            {"representation", dvr ? "dvr" : "spectral"}};
  }
};

struct SweepOptions {
  std::vector<double> d2;
  double g_min = 0.0;
  double g_max = 30.0;
  int steps = 600;
  std::vector<double> orders;
  int tracked = 12;
  double threshold = 1e-8;
  bool seventh = false;
  SolverOptions solver;
};

void sweep_command(Run& run, const SweepOptions& o, int threads) {
  const SolverConfig config = o.solver.config();
  require_non_negative(o.d2, "--d2");
  if (o.g_min < 0.0) throw std::invalid_argument("--g-min must be >= 0");
  if (o.tracked < 1) throw std::invalid_argument("--K must be >= 1");
  const auto grid = linspace(o.g_min, o.g_max, o.steps);
  run.parameters = {{"d2", o.d2}, {"g_min", o.g_min}, {"g_max", o.g_max},
                    {"steps", o.steps}, {"a", orders_json(o.orders)}, {"K", o.tracked},
                    {"threshold", o.threshold}, {"seventh", o.seventh},
                    {"solver", o.solver.to_json()}};
  const std::string solver_meta = "solver " + json{{"M", config.basis_size},
                                                   {"nodes", config.quadrature_nodes},
                                                   {"parity", to_string(config.parity)},
                                                   {"representation", o.solver.dvr ? "dvr" : "spectral"},
                                                   {"null_threshold", o.threshold}}
                                                  .dump();
  std::vector<double> d_list;
  for (double d2 : o.d2) d_list.push_back(std::sqrt(d2));

  if (o.seventh) {
    if (config.parity != Parity::Symmetric)
      throw std::invalid_argument("--seventh needs the symmetric sector");
    const auto traces = seventh_eigenvalue_trace(d_list, grid, config, threads);
    CsvTable curve, zeros;
    curve.metadata = zeros.metadata = {solver_meta, "seventh natural occupation number"};
    curve.columns = {"d2", "g", "lambda_7"};
    zeros.columns = {"d2", "g_zero"};
    for (std::size_t t = 0; t < traces.size(); ++t) {
      for (std::size_t i = 0; i < traces[t].g.size(); ++i)
        curve.add_row({cell(o.d2[t]), cell(traces[t].g[i]), cell(traces[t].lambda[i])});
      for (double z : traces[t].zeros) zeros.add_row({cell(o.d2[t]), cell(z)});
    }
    write_csv(run.path("seventh.csv"), curve);
    write_csv(run.path("seventh_zeros.csv"), zeros);
    return;
  }

  CsvTable table, entropy, nulls;
  table.metadata = entropy.metadata = nulls.metadata = {solver_meta, "entropies in bits"};
  table.columns = {"d2", "g", "Ex"};
  for (int k = 1; k <= o.tracked; ++k) table.columns.push_back("lambda_" + std::to_string(k));
  table.columns.push_back("S_vN");
  for (double a : o.orders) table.columns.push_back("S_a@" + format_short(a));
  entropy.columns = {"d2", "g", "a", "S"};
  nulls.columns = {"d2", "g_n", "eigen_index", "vanishing_count", "residual_lambda"};

  int failures = 0;
  for (std::size_t t = 0; t < d_list.size(); ++t) {
    const double d2 = o.d2[t];
    const auto result = sweep(d_list[t], grid, config, o.tracked, o.orders, threads);
    for (const auto& row : result.rows) {
      std::vector<std::string> cells{cell(d2), cell(row.g)};
      if (!row.ok) {
        ++failures;
        table.metadata.push_back("row failed at g=" + format_short(row.g) + ": " + row.error);
        cells.resize(table.columns.size(), "nan");
        table.add_row(std::move(cells));
        continue;
      }
      cells.push_back(cell(row.energy));
      for (double v : row.eigenvalues) cells.push_back(cell(v));
      cells.push_back(cell(row.von_neumann));
      for (double s : row.renyi) cells.push_back(cell(s));
      table.add_row(std::move(cells));
      entropy.add_row({cell(d2), cell(row.g), cell(1.0), cell(row.von_neumann)});
      for (std::size_t k = 0; k < o.orders.size(); ++k)
        entropy.add_row({cell(d2), cell(row.g), cell(o.orders[k]), cell(row.renyi[k])});
    }
    auto hamiltonian = std::make_shared<const RelativeHamiltonian>(d_list[t], config);
    for (const auto& n : null_point_detect(result, o.threshold, make_probe(hamiltonian, o.tracked))) {
      nulls.add_row({cell(d2), cell(n.g), cell(n.eigen_index + 1), cell(n.vanishing_count),
                     cell(n.residual_eigenvalue)});
      std::printf("d2=%s null point g=%.6f (lambda_%d, %d vanishing)\n", format_short(d2).c_str(),
                  n.g, n.eigen_index + 1, n.vanishing_count);
    }
  }
  write_csv(run.path("sweep.csv"), table);
  write_csv(run.path("entropy.csv"), entropy);
  write_csv(run.path("null_points.csv"), nulls);
  if (failures) std::fprintf(stderr, "warning: %d sweep rows failed (see sweep.csv)\n", failures);
}

// kinks ---------------------------------------------------------------------

struct KinkOptions {
  double d2 = 0.5;
  double g_min = 0.0;
  double g_max = 30.0;
  int steps = 600;
  std::vector<double> orders{0.2, 0.5, 2.0};
  int per_side = 40;
  SolverOptions solver;
};

void kinks_command(Run& run, const KinkOptions& o, int threads) {
  const SolverConfig config = o.solver.config();
  if (!(o.d2 > 0.0)) throw std::invalid_argument("--d2 must be positive");
  if (o.per_side < 20) throw std::invalid_argument("--per-side must be >= 20");
  for (double a : o.orders)
    if (!(a > 0.0)) throw std::invalid_argument("--a orders must be positive");
  const auto grid = linspace(o.g_min, o.g_max, o.steps);
  run.parameters = {{"d2", o.d2}, {"g_min", o.g_min}, {"g_max", o.g_max}, {"steps", o.steps},
                    {"a", orders_json(o.orders)}, {"per_side", o.per_side},
                    {"solver", o.solver.to_json()}};

  const double d = std::sqrt(o.d2);
  constexpr int kTracked = 12;
  const auto table = sweep(d, grid, config, kTracked, {}, threads);
  auto hamiltonian = std::make_shared<const RelativeHamiltonian>(d, config);
  const auto probe = make_probe(hamiltonian, kTracked);

  CsvTable report, samples;
  report.metadata = samples.metadata = {"fit of lambda ~ |g - g_n|^(2 k_m) over 1e-3 <= |g - g_n| <= 1e-1"};
  report.columns = {"d2", "g_n", "a", "k_m_fit", "derivative_class", "exponent_fit",
                    "exponent_stderr", "r_squared", "points_used", "eigen_index"};
  samples.columns = {"d2", "g_n", "eigen_index", "g", "lambda"};
  for (const auto& null : null_point_detect(table, 1e-8, probe)) {
    const auto near = sample_around(probe, null.g, null.eigen_index, o.per_side);
    for (std::size_t i = 0; i < near.g.size(); ++i)
      samples.add_row({cell(o.d2), cell(null.g), cell(null.eigen_index + 1), cell(near.g[i]),
                       cell(near.lambda[i])});
    for (double a : o.orders) {
      const auto k = kink_analysis(near.g, near.lambda, null.g, a);
      report.add_row({cell(o.d2), cell(null.g), cell(a), cell(k.k_m_fit),
                      to_string(k.derivative_class), cell(k.exponent_fit),
                      cell(k.exponent_stderr), cell(k.r_squared), cell(k.points_used),
                      cell(null.eigen_index + 1)});
      std::printf("g_n=%.6f a=%s k_m=%.4f %s\n", null.g, format_short(a).c_str(), k.k_m_fit,
                  to_string(k.derivative_class).c_str());
    }
  }
  write_csv(run.path("kinks.csv"), report);
  write_csv(run.path("kink_samples.csv"), samples);
}

// verify --------------------------------------------------------------------

bool verify_command(Run& run, int threads) {
  const auto results = acceptance::run_all(threads);
  json out = json::array();
  bool all = true;
  for (const auto& r : results) {
    std::puts(acceptance::format(r).c_str());
    out.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed},
                   {"detail", r.detail}});
    all = all && r.passed;
  }
  write_json(run.path("verify.json"), out);
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-exact states, reduced density matrices and entanglement of the "
               "two-particle regularized Calogero model"};
  app.set_version_flag("--version", REGCAL_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  ExactOptions exact;
  auto* exact_cmd = app.add_subcommand("exact-solve", "Closed-form state, spectrum and wavefunction profile");
  exact_cmd->add_option("--N", exact.N, "Truncation order")->capture_default_str();
  exact_cmd->add_option("--parity", exact.parity, "sym or antisym")->capture_default_str();
  exact_cmd->add_option("--p", exact.p, "Branch label (default: the nodeless branch)");
  exact_cmd->add_option("--d2", exact.d2, "Squared cutoff(s), comma separated")->delimiter(',');
  exact_cmd->add_option("--x-max", exact.x_max, "Profile half-width")->capture_default_str();
  exact_cmd->add_option("--x-steps", exact.x_steps, "Profile intervals")->capture_default_str();

  CurveOptions curve;
  auto* curves_cmd = app.add_subcommand("curves", "Isoenergetic coupling curves g(d)");
  curves_cmd->add_option("--N-max", curve.N_max)->capture_default_str();
  curves_cmd->add_option("--d2-max", curve.d2_max)->capture_default_str();
  curves_cmd->add_option("--steps", curve.steps)->capture_default_str();
  curves_cmd->add_option("--parity", curve.parity, "sym, antisym or both")->capture_default_str();

  CurveStateOptions rdm_opts, entropy_opts;
  auto add_curve_state = [](CLI::App* cmd, CurveStateOptions& o) {
    cmd->add_option("--N", o.N)->capture_default_str();
    cmd->add_option("--parity", o.parity)->capture_default_str();
    cmd->add_option("--p", o.p, "Branch label (default: the nodeless branch)");
    cmd->add_option("--d2-min", o.d2_min)->capture_default_str();
    cmd->add_option("--d2-max", o.d2_max)->capture_default_str();
    cmd->add_option("--steps", o.steps)->capture_default_str();
  };
  auto* rdm_cmd = app.add_subcommand("rdm", "One-body RDM spectra along a curve");
  add_curve_state(rdm_cmd, rdm_opts);
  auto* entropy_cmd = app.add_subcommand("entropy", "Entropies along a curve");
  add_curve_state(entropy_cmd, entropy_opts);
  entropy_cmd->add_option("--a", entropy_opts.orders, "Renyi orders")->delimiter(',');

  auto add_solver = [](CLI::App* cmd, SolverOptions& s) {
    cmd->add_option("--parity", s.parity)->capture_default_str();
    cmd->add_option("--M", s.M, "Basis size")->capture_default_str();
    cmd->add_option("--nodes", s.nodes, "Quadrature nodes")->capture_default_str();
    cmd->add_flag("--dvr", s.dvr, "Use the DVR interaction");
  };
  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Variational ground-state sweep over g");
  sweep_cmd->add_option("--d2", sweep_opts.d2, "Squared cutoff(s)")->delimiter(',')->required();
  sweep_cmd->add_option("--g-min", sweep_opts.g_min)->capture_default_str();
  sweep_cmd->add_option("--g-max", sweep_opts.g_max)->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_opts.steps)->capture_default_str();
  sweep_cmd->add_option("--a", sweep_opts.orders, "Renyi orders")->delimiter(',');
  sweep_cmd->add_option("--K", sweep_opts.tracked, "Tracked eigenvalues")->capture_default_str();
  sweep_cmd->add_option("--threshold", sweep_opts.threshold, "Null threshold")->capture_default_str();
  sweep_cmd->add_flag("--seventh", sweep_opts.seventh, "Trace the seventh eigenvalue only");
  add_solver(sweep_cmd, sweep_opts.solver);

  KinkOptions kink;
  auto* kinks_cmd = app.add_subcommand("kinks", "Exponent fits at detected null points");
  kinks_cmd->add_option("--d2", kink.d2)->capture_default_str();
  kinks_cmd->add_option("--g-min", kink.g_min)->capture_default_str();
  kinks_cmd->add_option("--g-max", kink.g_max)->capture_default_str();
  kinks_cmd->add_option("--steps", kink.steps)->capture_default_str();
  kinks_cmd->add_option("--a", kink.orders, "Renyi orders")->delimiter(',');
  kinks_cmd->add_option("--per-side", kink.per_side)->capture_default_str();
  add_solver(kinks_cmd, kink.solver);

  auto* verify_cmd = app.add_subcommand("verify", "Run the end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  Run run;
  run.out_dir = out_dir;
  try {
    const int threads = thread_count();
    std::error_code ec;
    fs::create_directories(run.out_dir, ec);
    if (ec || !fs::is_directory(run.out_dir)) {
      std::cerr << "error: cannot create output directory " << out_dir << '\n';
      return 1;
    }
    bool ok = true;
    if (*exact_cmd) {
      run.command = "exact-solve";
      exact_solve(run, exact);
    } else if (*curves_cmd) {
      run.command = "curves";
      curves(run, curve);
    } else if (*rdm_cmd) {
      run.command = "rdm";
      rdm_command(run, rdm_opts);
    } else if (*entropy_cmd) {
      run.command = "entropy";
      entropy_command(run, entropy_opts);
    } else if (*sweep_cmd) {
      run.command = "sweep";
      sweep_command(run, sweep_opts, threads);
    } else if (*kinks_cmd) {
      run.command = "kinks";
      kinks_command(run, kink, threads);
    } else if (*verify_cmd) {
      run.command = "verify";
      ok = verify_command(run, threads);
    }
    write_manifest(run);
    return ok ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
