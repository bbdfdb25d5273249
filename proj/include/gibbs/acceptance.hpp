#ifndef GIBBS_ACCEPTANCE_HPP
#define GIBBS_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gibbs {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the full regression-check battery over the built-in fixtures.
// sim_steps controls the Monte Carlo chain lengths of the two simulation
// criteria (1e6 is the reference setting).
std::vector<CriterionResult> run_acceptance(long sim_steps = 1'000'000,
                                            std::uint64_t seed = 42);

}  // namespace gibbs

#endif  // GIBBS_ACCEPTANCE_HPP
