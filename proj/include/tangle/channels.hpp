#pragma once

// Reduced dynamics of one subsystem when a bipartite product state is mapped
// to its tangent, and the overlap bookkeeping that rules out a bi-local
// (d (x) d) infinitesimal map.

#include <array>

#include "tangle/trajectories.hpp"

namespace tangle {

/// Partial trace of |dPsi><dPsi| over the other subsystem, next to its three-term
/// expansion (for subsystem 1; indices swap for subsystem 2):
///   differential  |dpsi1><dpsi1|
///   interference  (|psi1><dpsi1| - |dpsi1><psi1|) <psi2|dpsi2>
///   noise         |psi1><psi1| <dpsi2|dpsi2>
/// The expansion uses <dpsi|psi> = -<psi|dpsi>, so `gap` is only small for
/// norm-preserving curves.
struct ChannelReport {
  HermitianOp lhs;
  MatrixXc differential_term;
  MatrixXc interference_term;
  MatrixXc noise_term;
  double gap = 0.0;             // || lhs - sum of terms ||_F
  double tangent_norm_sq = 0.0;  // <dPsi|dPsi>
};

ChannelReport reduced_tangent_channel(const ProductTrajectory& traj, double t, int subsystem,
                                      DiffMethod method = {});

struct BilocalReport {
  std::array<cplx, 2> factor_overlaps;  // <psi_i|dpsi_i>, purely imaginary
  cplx product;                          // their product, hence real
  double reality_gap = 0.0;              // |Im(product)|
};

BilocalReport bilocal_inner_check(const ProductTrajectory& traj, double t, DiffMethod method = {});

/// Re<psi|dpsi> tolerance matching the differentiation error budget.
inline double norm_preservation_tol(bool exact) { return exact ? 1e-12 : 1e-8; }

}  // namespace tangle
