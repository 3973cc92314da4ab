#include "tangle/mixed_witness.hpp"

#include <cmath>

namespace tangle {

std::string_view to_string(Verdict v) {
  return v == Verdict::product_differential_excluded ? "product-differential-excluded"
                                                     : "inconclusive";
}

std::string_view to_string(Separability s) {
  switch (s) {
    case Separability::separable: return "separable";
    case Separability::entangled: return "entangled";
    case Separability::undecided: return "undecided";
  }
  return "?";
}

WitnessReport differential_trace_witness(const HermitianOp& drho, double tol) {
  if (drho.factors() != 2)
    throw ArgumentError("differential_trace_witness: operator must be bipartite");
  if (std::abs(drho.trace()) >= 1e-8)
    throw ValidationError("differential_trace_witness: operator is not traceless");
  const Cut cut = Cut::split({0}, 2);
  WitnessReport r;
  r.tr1_norm = partial_trace<double>(drho.matrix(), drho.dims(), cut, Side::right).norm();
  r.tr2_norm = partial_trace<double>(drho.matrix(), drho.dims(), cut, Side::left).norm();
  r.verdict = std::max(r.tr1_norm, r.tr2_norm) > tol ? Verdict::product_differential_excluded
                                                     : Verdict::inconclusive;
  return r;
}

double operator_form_gap(const Ensemble& ens, double t, DiffMethod method) {
  const auto jets = component_jets(ens, t, method);
  const auto n = total_dim(ens.dims());
  MatrixXc local = MatrixXc::Zero(n, n), bilocal = MatrixXc::Zero(n, n);
  for (std::size_t i = 0; i < jets.size(); ++i) {
    const double p = ens.weights()[i];
    local += p * (kron(jets[i].rho1, jets[i].drho2) + kron(jets[i].drho1, jets[i].rho2));
    bilocal += p * kron(jets[i].drho1, jets[i].drho2);
  }
  return (local - bilocal).norm();
}

WitnessReport ensemble_witness(const Ensemble& ens, double t, double tol, DiffMethod method) {
  WitnessReport r = differential_trace_witness(separable_mixed_differential(ens, t, method), tol);
  r.operator_gap = operator_form_gap(ens, t, method);
  return r;
}

Separability base_state_separability(const HermitianOp& rho, const Cut& cut, double tol) {
  if (std::abs(rho.trace() - 1.0) > tol)
    throw ValidationError("base_state_separability: trace is not 1");
  if (rho.eigenvalues().minCoeff() < -tol)
    throw ValidationError("base_state_separability: operator is not positive semidefinite");
  const PptResult ppt = ppt_negativity(rho, cut);
  if (ppt.min_eigenvalue < -tol) return Separability::entangled;
  return ppt.status == PptStatus::conclusive ? Separability::separable : Separability::undecided;
}

}  // namespace tangle
