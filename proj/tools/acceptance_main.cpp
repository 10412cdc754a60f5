#include <iostream>
#include <thread>

#include "rmt/acceptance.hpp"

int main() {
  const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto results = rmt::acceptance::run_all(threads, [](const rmt::acceptance::CriterionResult& r) {
    std::cout << rmt::acceptance::format_line(r) << std::endl;
  });
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << " (" << results.size() - failed << "/" << results.size()
            << ")" << std::endl;
  return failed == 0 ? 0 : 1;
}
