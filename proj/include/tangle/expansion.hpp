#pragma once

#include "tangle/entanglement.hpp"
#include "tangle/trajectories.hpp"

namespace tangle {

/// Taylor coefficients of C(t + dt) = c0 + c1 dt + c2 dt^2 + O(dt^3), where C is
/// the two-qubit correlation <sigma.a (x) sigma.b> along a trajectory.
struct CorrelationExpansion {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Exact expansion for two identical real Bloch-curve qubits, from analytic
/// first and second derivatives of the product state.
CorrelationExpansion correlation_expansion(const ProductTrajectory& traj, double t,
                                           const MeasurementSetting& setting);

}  // namespace tangle
