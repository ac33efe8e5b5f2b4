#include <chrono>
#include <cstdio>
#include <iostream>

#include "courbure/selftest.hpp"

// Criteria 1-12 run inside run_acceptance; criterion 13 is the wall-clock
// budget of the whole suite.
int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto results = courbure::run_acceptance(std::cout);
  const double total =
      std::chrono::duration<double>(clock::now() - start).count();

  const bool time_ok = total <= 600.0;
  std::printf("[%s] criterion 13 selftest_budget (%.1f s) total <= 600 s\n",
              time_ok ? "PASS" : "FAIL", total);

  const bool ok = courbure::all_passed(results) && time_ok;
  std::printf("%s: %zu criteria checked\n", ok ? "ALL PASS" : "FAILURES",
              results.size() + 1);
  return ok ? 0 : 1;
}
