#ifndef GIBBS_SPECTRAL_HPP
#define GIBBS_SPECTRAL_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gibbs/operators.hpp"

namespace gibbs {

struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;  // of Q - Pi
  double spectral_radius = 0.0;                   // r(Q - Pi)
  double gap = 0.0;                               // 1 - r(Q - Pi)
  double pi_operator_norm = 0.0;                  // ||Q - Pi|| in L^2(pi)
  bool is_self_adjoint = false;
};

// Eigenvalues of the similarity D^{1/2}(Q - Pi)D^{-1/2}; a symmetric solver is
// used when Q is pi-self-adjoint, a general one otherwise.
SpectralReport spectral_report(const ProjectorMatrix& q);

// Eigenvalues of a matrix on a target (same similarity transform), sorted by
// (real, imag). Shared by the collapsing checks.
std::vector<std::complex<double>> operator_spectrum(const Eigen::MatrixXd& t,
                                                    const JointTarget& pi);

// ||Q^n - Pi||_pi for n = 1..n_max.
std::vector<double> power_norm_rate(const ProjectorMatrix& q, int n_max);

struct SolidarityVerdict {
  StepFamily family;
  bool all_have_gap = false;
  bool consistent = false;
  // one gap per cycle ordering, keyed by the permutation of step indices
  std::vector<std::pair<std::vector<int>, double>> per_ordering_gaps;
  // one gap per sampled weight vector
  std::vector<std::pair<std::vector<double>, double>> per_weight_gaps;
  bool lemma_equivalences_hold = false;  // 1 not in sigma <=> norm < 1 <=> mixture norm < 1
};

// Enumerates every cycle ordering of the family and `weight_samples` random
// Dirichlet(1) mixtures (plus the uniform one); records gaps and checks that
// all agree on gap positivity.
SolidarityVerdict solidarity_suite(TargetPtr pi, const StepFamily& family,
                                   int weight_samples, std::uint64_t seed);

struct InheritanceReport {
  double full_gibbs_gap = 0.0;
  std::vector<std::pair<std::vector<int>, double>> cycle_gaps;
  std::vector<std::pair<std::vector<double>, double>> mixture_gaps;
  bool all_positive = false;
};

// Requires the full single-coordinate Gibbs cycle to have a gap, then checks
// that every cycle ordering and sampled mixture of `family` has one too.
InheritanceReport inheritance_check(TargetPtr pi, const StepFamily& family,
                                    int weight_samples = 4,
                                    std::uint64_t seed = 1);

// ||P_M T||_pi <= ||P_{M_1}...P_{M_N} T||_pi + tol, with M the union of the
// family's subsets (Pi when the union covers everything).
bool norm_contraction_check(TargetPtr pi, const StepFamily& family,
                            const Eigen::MatrixXd& t, double tol = 1e-9);

// r(blocked mixture - Pi) <= r(mixture - Pi) + tol with matched weights;
// requires blocked.subsets[d] to contain family.subsets[d] for every d.
bool mixture_ordering_check(TargetPtr pi, const StepFamily& family,
                            const StepFamily& blocked, const WeightVector& w,
                            double tol = 1e-9);

struct AperiodicityResult {
  bool irreducible = false;
  bool aperiodic = false;
};

// Reachability on the support graph, then a unit-circle eigenvalue scan of Q
// itself: aperiodic iff the only eigenvalue of modulus ~1 is the simple 1.
AperiodicityResult aperiodicity_check(const ProjectorMatrix& q);

// Deterministic Dirichlet(1) samples over the simplex (plus callers often add
// the uniform vector themselves).
std::vector<WeightVector> sample_weights(size_t g, int count, std::uint64_t seed);

}  // namespace gibbs

#endif  // GIBBS_SPECTRAL_HPP
