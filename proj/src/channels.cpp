#include "tangle/channels.hpp"

#include <cmath>

namespace tangle {

namespace {

FactorJets checked_jets(const ProductTrajectory& traj, double t, DiffMethod method,
                        const char* who) {
  if (traj.size() != 2)
    throw UnsupportedError(std::string(who) + ": only bipartite trajectories are supported");
  FactorJets j = factor_jets(traj.factors(), traj.frozen(), t, method);
  const double tol = norm_preservation_tol(j.exact);
  for (int i = 0; i < 2; ++i) {
    const double re = j.states[i].amplitudes().dot(j.derivatives[i]).real();
    if (std::abs(re) >= tol)
      throw ValidationError(std::string(who) + ": factor " + std::to_string(i + 1) +
                            " is not norm-preserving (Re<psi|dpsi> = " + std::to_string(re) + ")");
  }
  return j;
}

}  // namespace

ChannelReport reduced_tangent_channel(const ProductTrajectory& traj, double t, int subsystem,
                                      DiffMethod method) {
  if (subsystem != 1 && subsystem != 2)
    throw ArgumentError("reduced_tangent_channel: subsystem must be 1 or 2");
  const FactorJets j = checked_jets(traj, t, method, "reduced_tangent_channel");
  const TangentVector tv = product_tangent(traj, t, method);

  const auto& d = tv.direction();
  const MatrixXc full = d * d.adjoint();
  const Cut cut = Cut::split({0}, 2);
  const Side keep = subsystem == 1 ? Side::left : Side::right;
  MatrixXc reduced = partial_trace<double>(full, tv.dims(), cut, keep);
  reduced = (reduced + reduced.adjoint()).eval() / 2.0;

  const int self = subsystem - 1, other = 1 - self;
  const VectorXc& psi = j.states[self].amplitudes();
  const VectorXc& dpsi = j.derivatives[self];
  const VectorXc& psi_o = j.states[other].amplitudes();
  const VectorXc& dpsi_o = j.derivatives[other];

  ChannelReport r{HermitianOp(reduced, Dims{traj.factors()[self].dim()}), {}, {}, {}, 0.0, 0.0};
  r.differential_term = dpsi * dpsi.adjoint();
  r.interference_term = (psi * dpsi.adjoint() - dpsi * psi.adjoint()) * psi_o.dot(dpsi_o);
  r.noise_term = psi * psi.adjoint() * dpsi_o.squaredNorm();
  r.gap = (reduced - r.differential_term - r.interference_term - r.noise_term).norm();
  r.tangent_norm_sq = d.squaredNorm();
  return r;
}

BilocalReport bilocal_inner_check(const ProductTrajectory& traj, double t, DiffMethod method) {
  const FactorJets j = checked_jets(traj, t, method, "bilocal_inner_check");
  BilocalReport r;
  for (int i = 0; i < 2; ++i) r.factor_overlaps[i] = j.states[i].amplitudes().dot(j.derivatives[i]);
  r.product = r.factor_overlaps[0] * r.factor_overlaps[1];
  r.reality_gap = std::abs(r.product.imag());
  return r;
}

}  // namespace tangle
