#include "tangle/expansion.hpp"

namespace tangle {

namespace {

void require_identical_real_qubits(const ProductTrajectory& traj) {
  if (traj.size() != 2) throw UnsupportedError("correlation_expansion: needs exactly two factors");
  const auto* a = std::get_if<BlochCurve>(&traj.factors()[0].variant());
  const auto* b = std::get_if<BlochCurve>(&traj.factors()[1].variant());
  if (!a || !b) throw UnsupportedError("correlation_expansion: factors must be BlochCurves");
  if (traj.frozen()[0] || traj.frozen()[1])
    throw UnsupportedError("correlation_expansion: frozen factors are not supported");
  if (!a->phi.is_zero() || !b->phi.is_zero() || !traj.factors()[0].gauge().is_zero() ||
      !traj.factors()[1].gauge().is_zero())
    throw UnsupportedError("correlation_expansion: curves must be real (phi = 0, no gauge)");
  if (a->theta.coefficients() != b->theta.coefficients())
    throw UnsupportedError("correlation_expansion: the two curves must be identical");
}

}  // namespace

CorrelationExpansion correlation_expansion(const ProductTrajectory& traj, double t,
                                           const MeasurementSetting& setting) {
  require_identical_real_qubits(traj);
  const auto& curve = traj.factors()[0];
  const VectorXc p0 = curve.state(t);
  const VectorXc p1 = curve.derivative(t, 1);
  const VectorXc p2 = curve.derivative(t, 2);

  const VectorXc s0 = kron(p0, p0);
  const VectorXc s1 = VectorXc(kron(p1, p0) + kron(p0, p1));
  const VectorXc s2 = VectorXc(kron(p2, p0) + 2.0 * kron(p1, p1) + kron(p0, p2));
  const MatrixXc op = kron(sigma_dot<double>(setting.a), sigma_dot<double>(setting.b));

  // C = <S|O|S>, C' = 2 Re <S|O|S'>, C'' = 2 Re <S'|O|S'> + 2 Re <S|O|S''>
  CorrelationExpansion e;
  e.c0 = s0.dot(op * s0).real();
  e.c1 = 2.0 * s0.dot(op * s1).real();
  e.c2 = s1.dot(op * s1).real() + s0.dot(op * s2).real();
  return e;
}

}  // namespace tangle
