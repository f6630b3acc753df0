// One line per end-to-end criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "regcal/acceptance.hpp"

int main() {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REGCAL_THREADS")) threads = std::atoi(env);
  const auto results = regcal::acceptance::run_all(threads > 0 ? threads : 1);
  int failed = 0;
  for (const auto& r : results) {
    std::puts(regcal::acceptance::format(r).c_str());
    failed += r.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
