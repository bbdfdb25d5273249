#ifndef GIBBS_OPERATORS_HPP
#define GIBBS_OPERATORS_HPP

#include <optional>
#include <vector>

#include "gibbs/target.hpp"

namespace gibbs {

enum class OpKind { GibbsStep, PiProjector, Cycle, Mixture, General };

// Dense Markov operator on the flat joint space. Row x of the matrix is the
// kernel Q(x, .); the operator acts on functions by (Qf)(x) = sum_y Q(x,y)f(y),
// i.e. matrix * vector, and operator composition is matrix multiplication in
// the same order.
struct ProjectorMatrix {
  Eigen::MatrixXd matrix;
  TargetPtr target;
  OpKind kind = OpKind::General;
  // Coordinates resampled, when the operator is a single Gibbs step.
  std::optional<CoordinateSubset> subset;
};

// Family of resampling subsets I_1,...,I_g whose union covers all coordinates.
struct StepFamily {
  std::vector<CoordinateSubset> subsets;

  void validate(int k) const;  // each nonempty proper, union = {0,...,k-1}
};

// Strictly positive weights summing to 1.
struct WeightVector {
  std::vector<double> weights;

  void validate(size_t g) const;
};

// Gibbs step resampling the coordinates in `resampled` from pi(. | rest).
// Requires a strictly positive target.
ProjectorMatrix gibbs_step(TargetPtr pi, const CoordinateSubset& resampled);

// Rank-one projector onto constants: every row equals pi.
ProjectorMatrix pi_projector(TargetPtr pi);

// Kernel product of the steps in chronological update order.
ProjectorMatrix cycle(const std::vector<ProjectorMatrix>& steps);

// Convex combination of the steps.
ProjectorMatrix mixture(const std::vector<ProjectorMatrix>& steps,
                        const WeightVector& w);

// Adjoint in the pi-weighted inner product: D^{-1} Q^T D with D = diag(pi).
ProjectorMatrix pi_adjoint(const ProjectorMatrix& q);

// L^2(pi) operator norm: largest singular value of D^{1/2} T D^{-1/2}.
double pi_norm(const Eigen::MatrixXd& t, const JointTarget& pi);

// pi_norm of the commutator P_a P_b - P_b P_a.
double commutator_norm(const ProjectorMatrix& a, const ProjectorMatrix& b);

}  // namespace gibbs

#endif  // GIBBS_OPERATORS_HPP
