#include "gibbs/collapsing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gibbs/spectral.hpp"

namespace gibbs {

namespace {

// Flat index of a state's coordinates restricted to `coords` (ascending),
// row-major within that restriction.
long restricted_flat(const ProductSpace& space, const std::vector<int>& multi,
                     const std::vector<int>& coords) {
  long flat = 0;
  for (int c : coords) flat = flat * space.size(c) + multi[c];
  return flat;
}

// Positions of `inner` within `outer`; throws unless inner is a subset.
std::vector<int> positions_within(const CoordinateSubset& inner,
                                  const CoordinateSubset& outer) {
  std::vector<int> pos;
  for (int c : inner.indices()) {
    auto it = std::find(outer.indices().begin(), outer.indices().end(), c);
    if (it == outer.indices().end()) {
      throw std::invalid_argument("inner coordinates must lie inside the marginal subset");
    }
    pos.push_back(static_cast<int>(it - outer.indices().begin()));
  }
  return pos;
}

std::vector<std::complex<double>> nonzero_part(
    std::vector<std::complex<double>> eigs, double drop_tol) {
  std::erase_if(eigs, [&](auto e) { return std::abs(e) < drop_tol; });
  return eigs;
}

}  // namespace

bool nonzero_spectra_match(std::vector<std::complex<double>> a,
                           std::vector<std::complex<double>> b,
                           double drop_tol, double match_tol) {
  a = nonzero_part(std::move(a), drop_tol);
  b = nonzero_part(std::move(b), drop_tol);
  if (a.size() != b.size()) return false;
  auto lex = [](auto x, auto y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > match_tol) return false;
  }
  return true;
}

EmbeddingMatrix build_embedding(const JointTarget& pi, const CoordinateSubset& keep) {
  keep.validate(pi.space.num_components());
  MarginalTarget marg = marginalize(pi, keep);
  const long n = pi.space.dim();
  const long m = marg.space.dim();
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, m);
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(m, n);
  for (long x = 0; x < n; ++x) {
    auto multi = pi.space.multi_index(x);
    long a = restricted_flat(pi.space, multi, keep.indices());
    phi(x, a) = 1.0;
    bool zero_slice = true;
    for (int c = 0; c < pi.space.num_components(); ++c) {
      if (!keep.contains(c) && multi[c] != 0) zero_slice = false;
    }
    if (zero_slice) inv(a, x) = 1.0;  // restriction at the all-zeros slice
  }
  return EmbeddingMatrix{std::move(phi), std::move(inv), keep};
}

ProjectorMatrix collapsed_step(const MarginalTarget& pi_i,
                               const CoordinateSubset& inner) {
  if (inner.count() >= pi_i.subset.count()) {
    throw std::invalid_argument("collapsed step needs a proper subset of the marginal coordinates");
  }
  auto pos = positions_within(inner, pi_i.subset);
  return gibbs_step(pi_i.as_target(), CoordinateSubset(std::move(pos)));
}

bool similarity_check(TargetPtr pi, const CoordinateSubset& keep,
                      const CoordinateSubset& inner, double tol) {
  const int k = pi->space.num_components();
  keep.validate(k);
  EmbeddingMatrix phi = build_embedding(*pi, keep);
  MarginalTarget marg = marginalize(*pi, keep);
  TargetPtr marg_t = marg.as_target();

  Eigen::MatrixXd joint_op, marg_op;
  if (inner.count() == keep.count()) {
    // J = I: both sides average everything out
    joint_op = pi_projector(pi).matrix;
    marg_op = pi_projector(marg_t).matrix;
  } else {
    auto rest = keep.complement(k);
    joint_op = gibbs_step(pi, inner.unioned(rest)).matrix;
    auto pos = positions_within(inner, keep);
    marg_op = gibbs_step(marg_t, CoordinateSubset(std::move(pos))).matrix;
  }
  Eigen::MatrixXd lhs = joint_op * phi.matrix;
  Eigen::MatrixXd rhs = phi.matrix * marg_op;
  return (lhs - rhs).cwiseAbs().maxCoeff() < tol;
}

CollapsedPair collapsed_spectral_check(TargetPtr pi, const CoordinateSubset& keep,
                                       const std::vector<CoordinateSubset>& inner_family,
                                       CombineMode mode, const WeightVector* w) {
  const int k = pi->space.num_components();
  keep.validate(k);
  auto rest = keep.complement(k);

  std::vector<ProjectorMatrix> joint_steps;
  for (const auto& j : inner_family) {
    joint_steps.push_back(gibbs_step(pi, j.unioned(rest)));
  }

  MarginalTarget marg = marginalize(*pi, keep);
  TargetPtr marg_t = marg.as_target();
  std::vector<ProjectorMatrix> marg_steps;
  for (const auto& j : inner_family) {
    auto pos = positions_within(j, keep);
    marg_steps.push_back(gibbs_step(marg_t, CoordinateSubset(std::move(pos))));
  }

  CollapsedPair pair{
      mode == CombineMode::Cycle ? cycle(joint_steps)
                                 : mixture(joint_steps, *w),
      mode == CombineMode::Cycle ? cycle(marg_steps)
                                 : mixture(marg_steps, *w),
      {}, {}, false};

  Eigen::MatrixXd joint_diff = pair.joint_op.matrix - pi_projector(pi).matrix;
  Eigen::MatrixXd marg_diff = pair.marginal_op.matrix - pi_projector(marg_t).matrix;
  pair.joint_nonzero_spectrum =
      nonzero_part(operator_spectrum(joint_diff, *pi), 1e-8);
  pair.marginal_nonzero_spectrum =
      nonzero_part(operator_spectrum(marg_diff, *marg_t), 1e-8);
  pair.spectra_match = nonzero_spectra_match(pair.joint_nonzero_spectrum,
                                             pair.marginal_nonzero_spectrum);
  return pair;
}

BlockedVsCollapsedReport blocked_vs_collapsed_check(TargetPtr pi,
                                                    const CoordinateSubset& u,
                                                    const CoordinateSubset& v,
                                                    const CoordinateSubset& w) {
  BlockedVsCollapsedReport rep;
  rep.ci_gap = conditional_independence_gap(*pi, u, v, w);
  if (rep.ci_gap >= 1e-10) {
    rep.applicable = false;
    return rep;
  }
  rep.applicable = true;

  auto one_side = [&](const CoordinateSubset& a, const CoordinateSubset& b) {
    // sigma(P_{E_a} P_{E_b cap E_w} - Pi) on the joint space versus the
    // collapsed two-step cycle on the (a, w) marginal.
    auto joint_cycle = cycle({gibbs_step(pi, a), gibbs_step(pi, b.unioned(w))});
    Eigen::MatrixXd joint_diff = joint_cycle.matrix - pi_projector(pi).matrix;
    auto joint_spec = operator_spectrum(joint_diff, *pi);

    CoordinateSubset aw = a.unioned(w);
    MarginalTarget marg = marginalize(*pi, aw);
    TargetPtr marg_t = marg.as_target();
    auto pos_a = positions_within(a, aw);
    auto pos_w = positions_within(w, aw);
    auto marg_cycle = cycle({gibbs_step(marg_t, CoordinateSubset(pos_a)),
                             gibbs_step(marg_t, CoordinateSubset(pos_w))});
    Eigen::MatrixXd marg_diff = marg_cycle.matrix - pi_projector(marg_t).matrix;
    auto marg_spec = operator_spectrum(marg_diff, *marg_t);
    return nonzero_spectra_match(joint_spec, marg_spec);
  };

  rep.uv_equality = one_side(u, v);
  rep.vu_equality = one_side(v, u);
  return rep;
}

MarginalKernel marginal_chain(TargetPtr pi, const CoordinateSubset& chain_coords) {
  const int k = pi->space.num_components();
  chain_coords.validate(k);
  auto other = chain_coords.complement(k);

  MarginalTarget mz = marginalize(*pi, chain_coords);
  MarginalTarget my = marginalize(*pi, other);
  const long dz = mz.space.dim();
  const long dy = my.space.dim();

  // joint table p(z, y)
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(dz, dy);
  for (long x = 0; x < pi->space.dim(); ++x) {
    auto multi = pi->space.multi_index(x);
    long z = restricted_flat(pi->space, multi, chain_coords.indices());
    long y = restricted_flat(pi->space, multi, other.indices());
    joint(z, y) += pi->probs[x];
  }
  // A(z,y) = p(y|z), B(y,z') = p(z'|y)
  Eigen::MatrixXd a = joint;
  for (long z = 0; z < dz; ++z) {
    double m = a.row(z).sum();
    if (m <= 0.0) throw std::domain_error("zero-mass marginal state");
    a.row(z) /= m;
  }
  Eigen::MatrixXd b = joint.transpose();
  for (long y = 0; y < dy; ++y) {
    double m = b.row(y).sum();
    if (m <= 0.0) throw std::domain_error("zero-mass marginal state");
    b.row(y) /= m;
  }
  return MarginalKernel{a * b, std::move(mz)};
}

TwoComponentReport two_component_spectral_check(TargetPtr pi,
                                                const CoordinateSubset& y_coords) {
  const int k = pi->space.num_components();
  y_coords.validate(k);
  auto z_coords = y_coords.complement(k);

  auto py = gibbs_step(pi, y_coords);
  auto pz = gibbs_step(pi, z_coords);
  Eigen::MatrixXd proj = pi_projector(pi).matrix;

  TwoComponentReport rep;
  rep.spectrum_yz = nonzero_part(
      operator_spectrum(py.matrix * pz.matrix - proj, *pi), 1e-8);
  rep.spectrum_zy = nonzero_part(
      operator_spectrum(pz.matrix * py.matrix - proj, *pi), 1e-8);

  auto qy = marginal_chain(pi, y_coords);
  auto qz = marginal_chain(pi, z_coords);
  auto marg_spec = [](const MarginalKernel& q) {
    TargetPtr t = q.marginal.as_target();
    Eigen::MatrixXd diff = q.matrix - pi_projector(t).matrix;
    return operator_spectrum(diff, *t);
  };
  rep.spectrum_qy = nonzero_part(marg_spec(qy), 1e-8);
  rep.spectrum_qz = nonzero_part(marg_spec(qz), 1e-8);

  rep.all_match = nonzero_spectra_match(rep.spectrum_yz, rep.spectrum_zy) &&
                  nonzero_spectra_match(rep.spectrum_yz, rep.spectrum_qy) &&
                  nonzero_spectra_match(rep.spectrum_yz, rep.spectrum_qz);
  rep.all_real = true;
  for (const auto* spec : {&rep.spectrum_yz, &rep.spectrum_zy,
                           &rep.spectrum_qy, &rep.spectrum_qz}) {
    for (auto e : *spec) {
      if (std::abs(e.imag()) > 1e-8) rep.all_real = false;
    }
  }
  return rep;
}

}  // namespace gibbs
