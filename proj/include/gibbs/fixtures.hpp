#ifndef GIBBS_FIXTURES_HPP
#define GIBBS_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbs/target.hpp"

namespace gibbs {

struct Fixture {
  std::string name;
  TargetPtr target;
};

// probs [(1+rho)/4, (1-rho)/4, (1-rho)/4, (1+rho)/4] on a 2x2 space
TargetPtr correlated_pair(double rho);

// pi(u,v,w) = pi(w) pi(u|w) pi(v|w) on a 2x2x2 space, coordinates (u,v,w);
// U and V are conditionally independent given W by construction.
TargetPtr markov_uvw();

// Strictly positive target with deterministic pseudo-random weights.
TargetPtr random_target(const std::vector<int>& sizes, std::uint64_t seed);

// Random 2x2x2 target factorizing as pi(w) pi(u|w) pi(v|w); conditionally
// independent by construction, strictly positive.
TargetPtr random_markov_uvw(std::uint64_t seed);

// Regression set: uniform, the three correlated pairs, the Markov triple,
// and 20 seeded random targets with K in {2,3,4} and component sizes <= 3.
std::vector<Fixture> regression_fixtures();

}  // namespace gibbs

#endif  // GIBBS_FIXTURES_HPP
