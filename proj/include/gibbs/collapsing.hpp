#ifndef GIBBS_COLLAPSING_HPP
#define GIBBS_COLLAPSING_HPP

#include <complex>
#include <string>
#include <vector>

#include "gibbs/operators.hpp"

namespace gibbs {

// Lift of functions on the marginal space over `subset` to the joint space:
// (Phi f_I)(x) = f_I(x_I). Rectangular 0/1 matrix, one 1 per row; isometric
// for the pi / pi_I weighted inner products.
struct EmbeddingMatrix {
  Eigen::MatrixXd matrix;   // joint_dim x marginal_dim
  Eigen::MatrixXd inverse;  // marginal_dim x joint_dim, restriction to the
                            // all-zeros slice of the complement coordinates
  CoordinateSubset subset;
};

EmbeddingMatrix build_embedding(const JointTarget& pi, const CoordinateSubset& keep);

// Gibbs step on the marginal target pi_I, resampling the coordinates in
// `inner` (given as parent-space coordinates, a nonempty proper subset of I).
ProjectorMatrix collapsed_step(const MarginalTarget& pi_i,
                               const CoordinateSubset& inner);

// Intertwining identity P_{F_J cap F} Phi = Phi P_{F_J^{(I)}}; inner = I is
// allowed, in which case both sides are the Pi-type projectors.
bool similarity_check(TargetPtr pi, const CoordinateSubset& keep,
                      const CoordinateSubset& inner, double tol = 1e-10);

struct CollapsedPair {
  ProjectorMatrix joint_op;
  ProjectorMatrix marginal_op;
  std::vector<std::complex<double>> joint_nonzero_spectrum;
  std::vector<std::complex<double>> marginal_nonzero_spectrum;
  bool spectra_match = false;
};

enum class CombineMode { Cycle, Mixture };

// Joint operator from steps resampling J_d + complement(I) versus marginal
// operator from collapsed steps resampling J_d on pi_I; nonzero eigenvalue
// multisets of (op - projector) must coincide.
CollapsedPair collapsed_spectral_check(TargetPtr pi, const CoordinateSubset& keep,
                                       const std::vector<CoordinateSubset>& inner_family,
                                       CombineMode mode,
                                       const WeightVector* w = nullptr);

struct BlockedVsCollapsedReport {
  bool applicable = false;  // requires conditional independence of U, V given W
  double ci_gap = 0.0;
  bool uv_equality = false;  // sigma(P_U P_{VW} - Pi) = sigma on the UW marginal
  bool vu_equality = false;  // the U <-> V symmetric statement
};

BlockedVsCollapsedReport blocked_vs_collapsed_check(TargetPtr pi,
                                                    const CoordinateSubset& u,
                                                    const CoordinateSubset& v,
                                                    const CoordinateSubset& w);

// Autonomous marginal chain of the two-component deterministic-scan sampler:
// from z, draw y ~ pi(.|z) then z' ~ pi(.|y), where the chain lives on the
// coordinates in `chain_coords` and y ranges over the complement.
struct MarginalKernel {
  Eigen::MatrixXd matrix;
  MarginalTarget marginal;
};

MarginalKernel marginal_chain(TargetPtr pi, const CoordinateSubset& chain_coords);

struct TwoComponentReport {
  std::vector<std::complex<double>> spectrum_yz;  // P_Y P_Z - Pi, nonzero part
  std::vector<std::complex<double>> spectrum_zy;
  std::vector<std::complex<double>> spectrum_qy;  // Q_Y - Pi_Y
  std::vector<std::complex<double>> spectrum_qz;
  bool all_match = false;
  bool all_real = false;
};

// Four-way nonzero-spectrum equality of the two deterministic-scan orders and
// the two marginal chains, with realness of all eigenvalues.
TwoComponentReport two_component_spectral_check(TargetPtr pi,
                                                const CoordinateSubset& y_coords);

// Multiset comparison after dropping eigenvalues of modulus < drop_tol;
// sorted elementwise agreement within match_tol.
bool nonzero_spectra_match(std::vector<std::complex<double>> a,
                           std::vector<std::complex<double>> b,
                           double drop_tol = 1e-8, double match_tol = 1e-8);

}  // namespace gibbs

#endif  // GIBBS_COLLAPSING_HPP
