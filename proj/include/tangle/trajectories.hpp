#pragma once

// Parameterized single-factor state curves, their derivatives, and the
// differentials of product states, local-unitary registers, pseudo-pure
// states and separable mixtures built from them.

#include <optional>
#include <utility>
#include <variant>

#include "tangle/statespace.hpp"
#include "tangle/tangent.hpp"

namespace tangle {

/// Real polynomial in the curve parameter, coefficients in ascending order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial affine(double c0, double c1) { return Polynomial({c0, c1}); }

  double operator()(double t) const;
  Polynomial derivative() const;
  bool is_zero() const;
  const std::vector<double>& coefficients() const { return c_; }

 private:
  std::vector<double> c_;
};

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
struct BlochCurve {
  Polynomial theta;
  Polynomial phi;
};

/// e^{i phase(t)} |state>
struct PhaseCurve {
  Polynomial phase;
  Ket state;
};

/// exp(-i H t)|initial>, with H Hermitian in units of inverse parameter.
class LocalHamiltonianCurve {
 public:
  LocalHamiltonianCurve(HermitianOp generator, Ket initial);

  const HermitianOp& generator() const { return h_; }
  const Ket& initial() const { return psi0_; }

  VectorXc state(double t) const;
  VectorXc derivative(double t, int order) const;

 private:
  HermitianOp h_;
  Ket psi0_;
  Eigen::VectorXd energies_;
  MatrixXc eigvecs_;
  VectorXc coeffs_;  // initial state in the eigenbasis
};

/// Unit kets on a strictly increasing grid, interpolated by a natural cubic
/// spline per amplitude and renormalized.
class SampledCurve {
 public:
  SampledCurve(std::vector<double> ts, std::vector<Ket> states);

  double t_min() const { return ts_.front(); }
  double t_max() const { return ts_.back(); }
  int dim() const { return static_cast<int>(states_.front().size()); }
  const std::vector<double>& times() const { return ts_; }
  const std::vector<Ket>& samples() const { return states_; }

  VectorXc state(double t) const;

 private:
  std::vector<double> ts_;
  std::vector<Ket> states_;
  std::vector<VectorXc> second_;  // spline second derivatives at the knots
};

/// Which derivative to compute. `automatic` is analytic where the curve
/// supports it, otherwise Richardson extrapolation with step h.
struct DiffMethod {
  enum class Kind { automatic, analytic, central_fd, richardson };
  Kind kind = Kind::automatic;
  double h = 1e-4;

  static DiffMethod automatic(double h = 1e-4) { return {Kind::automatic, h}; }
  static DiffMethod analytic() { return {Kind::analytic, 0.0}; }
  static DiffMethod central_fd(double h) { return {Kind::central_fd, h}; }
  static DiffMethod richardson(double h) { return {Kind::richardson, h}; }
};

std::string to_string(DiffMethod::Kind kind);

/// One single-factor state curve. An optional gauge phase polynomial multiplies
/// the whole curve by e^{i gauge(t)}.
class FactorCurve {
 public:
  using Variant = std::variant<BlochCurve, PhaseCurve, LocalHamiltonianCurve, SampledCurve>;

  FactorCurve(Variant v, Polynomial gauge = {});

  const Variant& variant() const { return v_; }
  const Polynomial& gauge() const { return gauge_; }
  int dim() const { return dim_; }
  bool supports_analytic() const;
  std::pair<double, double> domain() const;

  FactorCurve with_phase(const Polynomial& extra) const;

  VectorXc state(double t) const;
  // Analytic derivative of the given order (1 or 2).
  VectorXc derivative(double t, int order = 1) const;

 private:
  Variant v_;
  Polynomial gauge_;
  int dim_;
};

Ket eval_curve(const FactorCurve& curve, double t);

/// Tangent of a single factor curve at t.
TangentVector differentiate(const FactorCurve& curve, double t, DiffMethod method = {});

/// Resolves `automatic` against a concrete curve.
DiffMethod::Kind resolve(DiffMethod method, const FactorCurve& curve);

/// Product of factor curves; frozen factors stay at their value and contribute
/// no differential.
class ProductTrajectory {
 public:
  ProductTrajectory(std::vector<FactorCurve> factors, std::vector<bool> frozen = {});

  const std::vector<FactorCurve>& factors() const { return factors_; }
  const std::vector<bool>& frozen() const { return frozen_; }
  int size() const { return static_cast<int>(factors_.size()); }
  Dims dims() const;

  Ket state(double t) const;

 private:
  std::vector<FactorCurve> factors_;
  std::vector<bool> frozen_;
};

/// Per-factor states and differentials of a product at t (frozen -> zero).
struct FactorJets {
  std::vector<Ket> states;
  std::vector<VectorXc> derivatives;
  bool exact = true;  // every moving factor was differentiated analytically
};

FactorJets factor_jets(const std::vector<FactorCurve>& factors, const std::vector<bool>& frozen,
                       double t, DiffMethod method);

/// sum_i psi_1 (x) ... (x) dpsi_i (x) ... (x) psi_n
TangentVector product_tangent(const ProductTrajectory& traj, double t, DiffMethod method = {});

/// Parameterized unitary exp(-i angle(t) G) * fixed.
class UnitaryCurve {
 public:
  UnitaryCurve(MatrixXc fixed, HermitianOp generator, Polynomial angle);

  static UnitaryCurve identity(int dim);
  static UnitaryCurve constant(MatrixXc u);
  // exp(-i angle(t) sigma_axis / 2), axis 0=x 1=y 2=z
  static UnitaryCurve rotation(int axis, Polynomial angle);

  int dim() const { return static_cast<int>(fixed_.rows()); }
  bool is_constant() const { return angle_.derivative().is_zero(); }

  MatrixXc value(double t) const;
  MatrixXc derivative(double t) const;

 private:
  MatrixXc fixed_;
  HermitianOp g_;
  Polynomial angle_;
  Eigen::VectorXd eig_;
  MatrixXc vecs_;
};

/// n-qubit register driven by a sequence of local-unitary steps. Step k acts
/// for a parameter interval [0, duration]; earlier steps are taken complete.
class RegisterProgram {
 public:
  RegisterProgram(int n, std::vector<std::vector<UnitaryCurve>> steps, Ket initial,
                  double duration = 1.0);

  int qubits() const { return n_; }
  int step_count() const { return static_cast<int>(steps_.size()); }
  double duration() const { return duration_; }
  const Ket& initial() const { return initial_; }
  const std::vector<std::vector<UnitaryCurve>>& steps() const { return steps_; }

  /// State before step k (1-based), i.e. after steps 1..k-1 at full duration.
  Ket state_before(int k) const;
  /// State after step k evaluated at local parameter t.
  Ket state(int k, double t) const;

  /// Maps a global parameter tau in [0, steps*duration] to (step, local t).
  std::pair<int, double> locate(double tau) const;

 private:
  int n_;
  std::vector<std::vector<UnitaryCurve>> steps_;
  Ket initial_;
  double duration_;
};

/// |+>^n, the uniform superposition over all 2^n basis states.
Ket uniform_superposition(int n);

TangentVector register_tangent(const RegisterProgram& prog, int k, double t,
                               DiffMethod method = {});

/// |psi><dpsi| + |dpsi><psi|, the differential of the projector |psi><psi|.
MatrixXc projector_differential(const VectorXc& psi, const VectorXc& dpsi);

/// (1 - eps) I / D + eps |psi><psi|
HermitianOp pseudo_pure_state(const Ket& psi, double epsilon);

/// eps (|psi><dpsi| + |dpsi><psi|)
HermitianOp pseudo_pure_differential(const Ket& psi, const TangentVector& dpsi, double epsilon);

/// One pure-product component of a separable mixture.
struct ComponentPair {
  FactorCurve first;
  FactorCurve second;
  bool first_frozen = false;
  bool second_frozen = false;
};

/// sum_i p_i |a_i(t)><a_i(t)| (x) |b_i(t)><b_i(t)|
class Ensemble {
 public:
  Ensemble(std::vector<double> weights, std::vector<ComponentPair> components);

  const std::vector<double>& weights() const { return w_; }
  const std::vector<ComponentPair>& components() const { return c_; }
  Dims dims() const;

  HermitianOp state(double t) const;

 private:
  std::vector<double> w_;
  std::vector<ComponentPair> c_;
};

/// Per-component projectors and their differentials at t.
struct ComponentJets {
  MatrixXc rho1, rho2, drho1, drho2;
};

std::vector<ComponentJets> component_jets(const Ensemble& ens, double t, DiffMethod method = {});

HermitianOp separable_mixed_differential(const Ensemble& ens, double t, DiffMethod method = {});

/// (I - i H T / N)^N
MatrixXc infinitesimal_composition(const HermitianOp& h, double T, long N);

/// exp(-i H T) by spectral decomposition.
MatrixXc exact_propagator(const HermitianOp& h, double T);

}  // namespace tangle
