#pragma once

// Witnesses that a mixed-state differential cannot be written in the
// product-differential form sum_i w_i dsigma1_i (x) dsigma2_i.
//
// Every pure-projector differential is traceless, so both partial traces of
// such a sum vanish. A nonzero partial trace of d(rho) therefore excludes the
// form. Only that form is tested; other decompositions are out of reach here.

#include <optional>
#include <string_view>

#include "tangle/entanglement.hpp"
#include "tangle/trajectories.hpp"

namespace tangle {

enum class Verdict { product_differential_excluded, inconclusive };
std::string_view to_string(Verdict v);

struct WitnessReport {
  double tr1_norm = 0.0;  // || tr_1 d(rho) ||_F  (subsystem 2 kept)
  double tr2_norm = 0.0;  // || tr_2 d(rho) ||_F  (subsystem 1 kept)
  std::optional<double> operator_gap;
  Verdict verdict = Verdict::inconclusive;
};

inline constexpr double kWitnessTol = 1e-8;

/// Partial-trace witness on a bipartite, traceless Hermitian differential.
WitnessReport differential_trace_witness(const HermitianOp& drho, double tol = kWitnessTol);

/// || sum p [rho1 (x) drho2 + drho1 (x) rho2] - sum p [drho1 (x) drho2] ||_F
double operator_form_gap(const Ensemble& ens, double t, DiffMethod method = {});

/// Trace witness on the ensemble differential plus the operator-form gap.
WitnessReport ensemble_witness(const Ensemble& ens, double t, double tol = kWitnessTol,
                               DiffMethod method = {});

enum class Separability { separable, entangled, undecided };
std::string_view to_string(Separability s);

/// PPT verdict on a density operator: conclusive for 2x2 and 2x3 splits,
/// `undecided` elsewhere when the partial transpose stays positive.
Separability base_state_separability(const HermitianOp& rho, const Cut& cut, double tol = 1e-10);

}  // namespace tangle
