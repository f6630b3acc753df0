#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(REGCAL_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("regcal_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("exact-solve writes the state and spectrum") {
  const auto dir = scratch("exact");
  REQUIRE(run("exact-solve --N 0 --parity sym --d2 0 --out " + dir.string()) == 0);
  const auto states = nlohmann::json::parse(slurp(dir / "states.json"));
  const auto ev = states[0]["spectrum"]["eigenvalues"];
  CHECK(ev[0].get<double>() == doctest::Approx((2 + std::sqrt(3.0)) / 6).epsilon(1e-12));
  CHECK(ev[1].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(ev[2].get<double>() == doctest::Approx((2 - std::sqrt(3.0)) / 6).epsilon(1e-12));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["command"] == "exact-solve");
  for (const auto& name : manifest["output_paths"]) CHECK(fs::exists(dir / name.get<std::string>()));
  CHECK(slurp(dir / "wavefunction.csv").rfind("# ", 0) == 0);
}

TEST_CASE("curves output is deterministic") {
  const auto a = scratch("curves_a"), b = scratch("curves_b");
  REQUIRE(run("curves --N-max 2 --d2-max 6 --steps 30 --out " + a.string()) == 0);
  REQUIRE(run("curves --N-max 2 --d2-max 6 --steps 30 --out " + b.string()) == 0);
  const auto text = slurp(a / "curves.csv");
  CHECK(text == slurp(b / "curves.csv"));
  CHECK(text.find("N,parity,p,n,E_total,d2,g\n") != std::string::npos);
}

TEST_CASE("sweep is deterministic across thread counts") {
  const auto a = scratch("sweep_a"), b = scratch("sweep_b");
  const std::string args = "sweep --d2 0.5 --g-min 3 --g-max 5 --steps 40 --a 0.2,2 --M 60 --nodes 200";
  REQUIRE(run("--out " + a.string() + " " + args) == 0);
  REQUIRE(std::system(("REGCAL_THREADS=3 " + std::string(REGCAL_CLI) + " " + args + " --out " +
                       b.string() + " >/dev/null").c_str()) == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  // Third line: first data row after the metadata and header.
  std::istringstream nulls(slurp(a / "null_points.csv"));
  std::string line;
  while (std::getline(nulls, line) && (line.empty() || line[0] == '#' || line[0] == 'd')) {
  }
  REQUIRE(line.rfind("0.5,", 0) == 0);
  CHECK(std::stod(line.substr(4)) == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("rdm, entropy and kinks run") {
  const auto dir = scratch("misc");
  CHECK(run("rdm --parity antisym --steps 4 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "rdm_spectrum.csv"));
  CHECK(fs::exists(dir / "rdm_matrices.json"));
  CHECK(run("entropy --steps 4 --a 0.5,2 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "entropy.csv"));
  CHECK(run("kinks --d2 0.5 --g-min 3 --g-max 5 --steps 40 --a 0.2 --per-side 20 --M 60 --nodes 200 --out " +
            dir.string()) == 0);
  const auto kinks = slurp(dir / "kinks.csv");
  CHECK(kinks.find("divergent") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("errors");
  CHECK(run("exact-solve --bogus 1 --out " + dir.string()) == 2);
  CHECK(run("exact-solve --parity sideways --out " + dir.string()) == 2);
  CHECK(run("exact-solve --N 1 --p 3 --out " + dir.string()) == 2);
  CHECK(run("sweep --d2 0 --out " + dir.string()) == 2);
  CHECK(run("sweep --d2 1 --M 5 --out " + dir.string()) == 2);
  CHECK(run("") == 2);
  CHECK(run("curves --out /proc/regcal-cannot-write") == 1);
  CHECK(std::system(("REGCAL_THREADS=zero " + std::string(REGCAL_CLI) + " curves --out " +
                     dir.string() + " >/dev/null 2>&1").c_str()) != 0);
}
