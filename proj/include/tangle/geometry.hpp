#pragma once

// Fubini-Study geometry of state curves and the entanglement carried by their
// tangents along the way.

#include <variant>

#include "tangle/entanglement.hpp"
#include "tangle/tangent.hpp"
#include "tangle/trajectories.hpp"

namespace tangle {

/// 2 sqrt(1 - |<a|b>|^2), evaluated as 2 || b - <a|b> a || to avoid cancellation
/// for nearby states.
template <typename Real>
Real fs_distance(const BasicKet<Real>& a, const BasicKet<Real>& b, Real tol = Real(1e-10)) {
  if (a.size() != b.size()) throw ArgumentError("fs_distance: dimension mismatch");
  if (!a.is_unit(tol) || !b.is_unit(tol)) throw ValidationError("fs_distance: non-unit input");
  const auto& va = a.amplitudes();
  const auto& vb = b.amplitudes();
  const Real perp = (vb - va.dot(vb) * va).norm();
  return std::min(Real(2) * perp, Real(2));
}

/// Projective speed 2 sqrt(<d|d> - |<psi|d>|^2).
template <typename Real>
Real fs_speed(const BasicTangentVector<Real>& tv) {
  return Real(2) * horizontal_tangent(tv).direction().norm();
}

struct GeodesicSample {
  double t = 0.0;
  double fs_speed = 0.0;
  std::vector<double> tangent_entropy;  // one per requested cut, ebits
  std::vector<double> base_entropy;
};

struct Profile {
  std::vector<Cut> cuts;
  std::vector<GeodesicSample> samples;
  double arc_length = 0.0;  // trapezoidal integral of fs_speed over the grid
};

struct ProfileOptions {
  DiffMethod method{};
  bool horizontal = true;     // raw tangents when false
  double zero_speed = 1e-12;  // below this the tangent direction is undefined; entropy reported 0
};

using ProfileSource = std::variant<const ProductTrajectory*, const RegisterProgram*>;

/// Tangent of either a product trajectory at t, or a register program at
/// global parameter t (see RegisterProgram::locate).
TangentVector tangent_at(ProfileSource source, double t, DiffMethod method);

/// Entropy of the normalized direction of `tv` across `cut`, 0 if it vanishes.
double tangent_entropy(const TangentVector& tv, const Cut& cut, double zero_norm = 1e-12);

Profile profile(ProfileSource source, const std::vector<double>& grid, const std::vector<Cut>& cuts,
                const ProfileOptions& options = {});

inline Profile profile(const ProductTrajectory& traj, const std::vector<double>& grid,
                       const std::vector<Cut>& cuts, const ProfileOptions& options = {}) {
  return profile(ProfileSource(&traj), grid, cuts, options);
}

inline Profile profile(const RegisterProgram& prog, const std::vector<double>& grid,
                       const std::vector<Cut>& cuts, const ProfileOptions& options = {}) {
  return profile(ProfileSource(&prog), grid, cuts, options);
}

}  // namespace tangle
