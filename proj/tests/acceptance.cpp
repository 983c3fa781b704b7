// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <thread>

#include "coverlab/acceptance.hpp"

int main() {
  using namespace coverlab;
  acceptance::Context ctx;
  ctx.threads = std::getenv("COVERLAB_THREADS") ? default_threads() : std::max(1u, std::thread::hardware_concurrency());
  const size_t n = acceptance::all_criteria().size();
  size_t passed = 0;
  for (size_t id = 1; id <= n; ++id) {
    const auto r = acceptance::run(int(id), ctx);
    passed += r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << r.id << "] " << r.name << " (" << std::fixed
              << std::setprecision(2) << r.seconds << " s): " << r.detail << std::endl;
  }
  std::cout << passed << "/" << n << " criteria passed" << std::endl;
  return passed == n ? 0 : 1;
}
