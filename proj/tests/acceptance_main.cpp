// Acceptance battery: runs every regression criterion over the built-in
// fixtures and prints one PASS/FAIL line per criterion. Exit code is 0 only
// when all criteria pass.
//
// Usage: acceptance_tests [sim_steps] [seed]
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "gibbs/acceptance.hpp"

int main(int argc, char** argv) {
  long sim_steps = 1'000'000;
  unsigned long long seed = 42;
  if (argc > 1) sim_steps = std::strtol(argv[1], nullptr, 10);
  if (argc > 2) seed = std::strtoull(argv[2], nullptr, 10);
  if (sim_steps <= 0) {
    std::fprintf(stderr, "sim_steps must be positive\n");
    return 2;
  }

  std::vector<gibbs::CriterionResult> results;
  try {
    results = gibbs::run_acceptance(sim_steps, seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 2;
  }

  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %s — %s\n", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
