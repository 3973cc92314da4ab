#include "tangle/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tangle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr cplx kI(0.0, 1.0);

// First derivative by finite differences, central where the stencil fits in
// [lo, hi], otherwise second-order one-sided.
template <typename F>
auto fd_first(const F& f, double t, double h, double lo, double hi) {
  using R = decltype(f(t));
  if (t - h >= lo && t + h <= hi) return R((f(t + h) - f(t - h)) / (2.0 * h));
  if (t + 2.0 * h <= hi) return R((-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h));
  if (t - 2.0 * h >= lo) return R((3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h));
  throw RangeError("finite difference: domain narrower than stencil");
}

template <typename F>
auto numeric_derivative(const F& f, double t, DiffMethod::Kind kind, double h, double lo,
                        double hi) {
  using R = decltype(f(t));
  if (!(h > 0.0)) throw ArgumentError("finite difference step h must be positive");
  if (kind == DiffMethod::Kind::central_fd) return R(fd_first(f, t, h, lo, hi));
  const R coarse = fd_first(f, t, h, lo, hi);
  const R fine = fd_first(f, t, h / 2.0, lo, hi);
  return R((4.0 * fine - coarse) / 3.0);
}

MatrixXc spectral_exp(const Eigen::VectorXd& eig, const MatrixXc& vecs, double scale) {
  VectorXc phases(eig.size());
  for (Eigen::Index i = 0; i < eig.size(); ++i) phases(i) = std::exp(-kI * eig(i) * scale);
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

bool is_unit(const VectorXc& v, double tol) { return std::abs(v.norm() - 1.0) < tol; }

// Reference parameter at which frozen factors are held.
double frozen_parameter(const FactorCurve& c) {
  const auto [lo, hi] = c.domain();
  return std::clamp(0.0, lo, hi);
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  for (double c : c_)
    if (!std::isfinite(c)) throw ValidationError("Polynomial: non-finite coefficient");
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(static_cast<double>(i) * c_[i]);
  return Polynomial(std::move(d));
}

bool Polynomial::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double c) { return c == 0.0; });
}

std::string to_string(DiffMethod::Kind kind) {
  switch (kind) {
    case DiffMethod::Kind::automatic: return "auto";
    case DiffMethod::Kind::analytic: return "analytic";
    case DiffMethod::Kind::central_fd: return "central_fd";
    case DiffMethod::Kind::richardson: return "richardson";
  }
  return "?";
}

// ---------------------------------------------------- LocalHamiltonianCurve

LocalHamiltonianCurve::LocalHamiltonianCurve(HermitianOp generator, Ket initial)
    : h_(std::move(generator)), psi0_(std::move(initial)) {
  if (h_.side() != psi0_.size())
    throw ArgumentError("LocalHamiltonianCurve: generator and initial state differ in dimension");
  if (!psi0_.is_unit(1e-10)) throw ValidationError("LocalHamiltonianCurve: initial state not unit");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h_.matrix());
  energies_ = es.eigenvalues();
  eigvecs_ = es.eigenvectors();
  coeffs_ = eigvecs_.adjoint() * psi0_.amplitudes();
}

VectorXc LocalHamiltonianCurve::state(double t) const { return derivative(t, 0); }

VectorXc LocalHamiltonianCurve::derivative(double t, int order) const {
  VectorXc c(coeffs_.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const cplx rate = -kI * energies_(i);
    c(i) = std::pow(rate, order) * std::exp(rate * t) * coeffs_(i);
  }
  return eigvecs_ * c;
}

// -------------------------------------------------------------- SampledCurve

SampledCurve::SampledCurve(std::vector<double> ts, std::vector<Ket> states)
    : ts_(std::move(ts)), states_(std::move(states)) {
  if (ts_.size() < 2 || ts_.size() != states_.size())
    throw ArgumentError("SampledCurve: need >= 2 (t, ket) pairs");
  for (std::size_t i = 0; i < ts_.size(); ++i) {
    if (i > 0 && !(ts_[i] > ts_[i - 1]))
      throw ArgumentError("SampledCurve: sample times must be strictly increasing");
    if (states_[i].size() != states_.front().size())
      throw ArgumentError("SampledCurve: samples differ in dimension");
    if (!states_[i].is_unit(1e-10))
      throw ValidationError("SampledCurve: sample " + std::to_string(i) + " is not unit-norm");
  }
  // Natural spline: M_0 = M_n = 0, tridiagonal solve for the interior knots.
  const std::size_t n = ts_.size() - 1;
  const Eigen::Index d = states_.front().size();
  second_.assign(n + 1, VectorXc::Zero(d));
  if (n < 2) return;
  std::vector<double> diag(n + 1), upper(n + 1);
  std::vector<VectorXc> rhs(n + 1, VectorXc::Zero(d));
  for (std::size_t i = 1; i < n; ++i) {
    const double h0 = ts_[i] - ts_[i - 1], h1 = ts_[i + 1] - ts_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((states_[i + 1].amplitudes() - states_[i].amplitudes()) / h1 -
                    (states_[i].amplitudes() - states_[i - 1].amplitudes()) / h0);
    if (i > 1) {
      const double m = h0 / diag[i - 1];
      diag[i] -= m * upper[i - 1];
      rhs[i] -= m * rhs[i - 1];
    }
  }
  for (std::size_t i = n - 1; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

VectorXc SampledCurve::state(double t) const {
  if (!(t >= ts_.front() && t <= ts_.back()))
    throw RangeError("SampledCurve: t = " + std::to_string(t) + " outside [" +
                     std::to_string(ts_.front()) + ", " + std::to_string(ts_.back()) + "]");
  auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  std::size_t i = static_cast<std::size_t>(std::distance(ts_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, ts_.size() - 1) - 1;
  const double h = ts_[i + 1] - ts_[i];
  const double a = (ts_[i + 1] - t) / h, b = (t - ts_[i]) / h;
  VectorXc s = a * states_[i].amplitudes() + b * states_[i + 1].amplitudes() +
               ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]) * (h * h / 6.0);
  const double nrm = s.norm();
  if (!(nrm > 0.0)) throw DegenerateInputError("SampledCurve: interpolant vanishes");
  return s / nrm;
}

// ---------------------------------------------------------------- FactorCurve

FactorCurve::FactorCurve(Variant v, Polynomial gauge) : v_(std::move(v)), gauge_(std::move(gauge)) {
  dim_ = std::visit(
      [](const auto& c) -> int {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BlochCurve>) {
          return 2;
        } else if constexpr (std::is_same_v<T, PhaseCurve>) {
          if (!c.state.is_unit(1e-10)) throw ValidationError("PhaseCurve: state is not unit-norm");
          return static_cast<int>(c.state.size());
        } else if constexpr (std::is_same_v<T, LocalHamiltonianCurve>) {
          return static_cast<int>(c.initial().size());
        } else {
          return c.dim();
        }
      },
      v_);
}

bool FactorCurve::supports_analytic() const { return !std::holds_alternative<SampledCurve>(v_); }

std::pair<double, double> FactorCurve::domain() const {
  if (const auto* s = std::get_if<SampledCurve>(&v_)) return {s->t_min(), s->t_max()};
  return {-kInf, kInf};
}

FactorCurve FactorCurve::with_phase(const Polynomial& extra) const {
  std::vector<double> c = gauge_.coefficients();
  const auto& e = extra.coefficients();
  if (c.size() < e.size()) c.resize(e.size(), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) c[i] += e[i];
  return FactorCurve(v_, Polynomial(std::move(c)));
}

namespace {

// Base curve (without gauge phase) and its first two derivatives.
struct Jet {
  VectorXc v0, v1, v2;
};

Jet bloch_jet(const BlochCurve& c, double t, int order) {
  const double th = c.theta(t), ph = c.phi(t);
  const double s = std::sin(th / 2.0), co = std::cos(th / 2.0);
  const cplx e = std::exp(kI * ph);
  Jet j;
  j.v0 = VectorXc(2);
  j.v0 << co, e * s;
  if (order < 1) return j;
  const auto dth = c.theta.derivative(), dph = c.phi.derivative();
  const double th1 = dth(t), ph1 = dph(t);
  const cplx g = kI * ph1 * s + 0.5 * co * th1;
  j.v1 = VectorXc(2);
  j.v1 << -0.5 * s * th1, e * g;
  if (order < 2) return j;
  const double th2 = dth.derivative()(t), ph2 = dph.derivative()(t);
  const cplx g1 = kI * ph2 * s + kI * ph1 * 0.5 * co * th1 - 0.25 * s * th1 * th1 + 0.5 * co * th2;
  j.v2 = VectorXc(2);
  j.v2 << -0.25 * co * th1 * th1 - 0.5 * s * th2, e * (kI * ph1 * g + g1);
  return j;
}

Jet base_jet(const FactorCurve::Variant& v, double t, int order) {
  return std::visit(
      [&](const auto& c) -> Jet {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BlochCurve>) {
          return bloch_jet(c, t, order);
        } else if constexpr (std::is_same_v<T, PhaseCurve>) {
          const auto d = c.phase.derivative();
          const cplx e = std::exp(kI * c.phase(t));
          Jet j;
          j.v0 = e * c.state.amplitudes();
          if (order >= 1) j.v1 = kI * d(t) * j.v0;
          if (order >= 2) j.v2 = (kI * d.derivative()(t) - d(t) * d(t)) * j.v0;
          return j;
        } else if constexpr (std::is_same_v<T, LocalHamiltonianCurve>) {
          Jet j;
          j.v0 = c.state(t);
          if (order >= 1) j.v1 = c.derivative(t, 1);
          if (order >= 2) j.v2 = c.derivative(t, 2);
          return j;
        } else {
          if (order > 0)
            throw UnsupportedError("analytic differentiation is not available for SampledCurve");
          return Jet{c.state(t), {}, {}};
        }
      },
      v);
}

}  // namespace

VectorXc FactorCurve::state(double t) const {
  VectorXc v = base_jet(v_, t, 0).v0;
  if (!gauge_.is_zero()) v *= std::exp(kI * gauge_(t));
  return v;
}

VectorXc FactorCurve::derivative(double t, int order) const {
  if (order < 1 || order > 2) throw ArgumentError("FactorCurve::derivative: order must be 1 or 2");
  const Jet j = base_jet(v_, t, order);
  if (gauge_.is_zero()) return order == 1 ? j.v1 : j.v2;
  const auto d = gauge_.derivative();
  const double g1 = d(t);
  const cplx e = std::exp(kI * gauge_(t));
  if (order == 1) return e * (kI * g1 * j.v0 + j.v1);
  const double g2 = d.derivative()(t);
  return e * ((kI * g2 - g1 * g1) * j.v0 + 2.0 * kI * g1 * j.v1 + j.v2);
}

Ket eval_curve(const FactorCurve& curve, double t) {
  VectorXc v = curve.state(t);
  if (!is_unit(v, 1e-10)) throw ValidationError("eval_curve: curve left the unit sphere");
  return Ket(std::move(v), Dims{curve.dim()});
}

DiffMethod::Kind resolve(DiffMethod method, const FactorCurve& curve) {
  switch (method.kind) {
    case DiffMethod::Kind::automatic:
      return curve.supports_analytic() ? DiffMethod::Kind::analytic : DiffMethod::Kind::richardson;
    case DiffMethod::Kind::analytic:
      if (!curve.supports_analytic())
        throw UnsupportedError("analytic differentiation is not available for SampledCurve");
      return method.kind;
    default: return method.kind;
  }
}

namespace {

VectorXc curve_derivative(const FactorCurve& curve, double t, DiffMethod method) {
  const auto kind = resolve(method, curve);
  if (kind == DiffMethod::Kind::analytic) return curve.derivative(t, 1);
  const auto [lo, hi] = curve.domain();
  return numeric_derivative([&](double s) { return curve.state(s); }, t, kind, method.h, lo, hi);
}

}  // namespace

TangentVector differentiate(const FactorCurve& curve, double t, DiffMethod method) {
  return TangentVector(eval_curve(curve, t), curve_derivative(curve, t, method), "t");
}

// ---------------------------------------------------------- ProductTrajectory

ProductTrajectory::ProductTrajectory(std::vector<FactorCurve> factors, std::vector<bool> frozen)
    : factors_(std::move(factors)), frozen_(std::move(frozen)) {
  if (factors_.size() < 2) throw ArgumentError("ProductTrajectory: need at least two factors");
  if (frozen_.empty()) frozen_.assign(factors_.size(), false);
  if (frozen_.size() != factors_.size())
    throw ArgumentError("ProductTrajectory: frozen flags do not match factor count");
  if (std::all_of(frozen_.begin(), frozen_.end(), [](bool f) { return f; }))
    throw ArgumentError("ProductTrajectory: at least one factor must move");
}

Dims ProductTrajectory::dims() const {
  Dims d;
  for (const auto& f : factors_) d.push_back(f.dim());
  return d;
}

namespace {
Ket factor_state(const FactorCurve& c, bool frozen, double t) {
  return eval_curve(c, frozen ? frozen_parameter(c) : t);
}
}  // namespace

Ket ProductTrajectory::state(double t) const {
  std::vector<Ket> ks;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    ks.push_back(factor_state(factors_[i], frozen_[i], t));
  return tensor_product(ks);
}

FactorJets factor_jets(const std::vector<FactorCurve>& factors, const std::vector<bool>& frozen,
                       double t, DiffMethod method) {
  FactorJets j;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& c = factors[i];
    if (frozen[i]) {
      j.states.push_back(eval_curve(c, frozen_parameter(c)));
      j.derivatives.push_back(VectorXc::Zero(c.dim()));
      continue;
    }
    j.states.push_back(eval_curve(c, t));
    j.derivatives.push_back(curve_derivative(c, t, method));
    j.exact = j.exact && resolve(method, c) == DiffMethod::Kind::analytic;
  }
  return j;
}

TangentVector product_tangent(const ProductTrajectory& traj, double t, DiffMethod method) {
  const FactorJets j = factor_jets(traj.factors(), traj.frozen(), t, method);
  Ket base = tensor_product(j.states);
  VectorXc dir = VectorXc::Zero(base.size());
  for (std::size_t i = 0; i < j.states.size(); ++i) {
    if (traj.frozen()[i]) continue;
    VectorXc term = i == 0 ? j.derivatives[0] : j.states[0].amplitudes();
    for (std::size_t f = 1; f < j.states.size(); ++f)
      term = kron(term, f == i ? j.derivatives[f] : j.states[f].amplitudes());
    dir += term;
  }
  return TangentVector(std::move(base), std::move(dir), "t");
}

// ---------------------------------------------------------- registers

UnitaryCurve::UnitaryCurve(MatrixXc fixed, HermitianOp generator, Polynomial angle)
    : fixed_(std::move(fixed)), g_(std::move(generator)), angle_(std::move(angle)) {
  if (fixed_.rows() != fixed_.cols() || g_.side() != fixed_.rows())
    throw ArgumentError("UnitaryCurve: fixed part and generator differ in shape");
  const double err =
      (fixed_.adjoint() * fixed_ - MatrixXc::Identity(fixed_.rows(), fixed_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (err > 1e-10) throw ValidationError("UnitaryCurve: fixed part is not unitary");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(g_.matrix());
  eig_ = es.eigenvalues();
  vecs_ = es.eigenvectors();
}

UnitaryCurve UnitaryCurve::identity(int dim) { return constant(MatrixXc::Identity(dim, dim)); }

UnitaryCurve UnitaryCurve::constant(MatrixXc u) {
  const int d = static_cast<int>(u.rows());
  return UnitaryCurve(std::move(u), HermitianOp(MatrixXc::Zero(d, d), Dims{d}), Polynomial());
}

UnitaryCurve UnitaryCurve::rotation(int axis, Polynomial angle) {
  MatrixXc g(2, 2);
  switch (axis) {
    case 0: g << 0, 0.5, 0.5, 0; break;
    case 1: g << 0, cplx(0, -0.5), cplx(0, 0.5), 0; break;
    case 2: g << 0.5, 0, 0, -0.5; break;
    default: throw ArgumentError("UnitaryCurve::rotation: axis must be 0, 1 or 2");
  }
  return UnitaryCurve(MatrixXc::Identity(2, 2), HermitianOp(std::move(g), Dims{2}),
                      std::move(angle));
}

MatrixXc UnitaryCurve::value(double t) const { return spectral_exp(eig_, vecs_, angle_(t)) * fixed_; }

MatrixXc UnitaryCurve::derivative(double t) const {
  return -kI * angle_.derivative()(t) * g_.matrix() * value(t);
}

RegisterProgram::RegisterProgram(int n, std::vector<std::vector<UnitaryCurve>> steps, Ket initial,
                                 double duration)
    : n_(n), steps_(std::move(steps)), initial_(std::move(initial)), duration_(duration) {
  if (n_ < 1) throw ArgumentError("RegisterProgram: need at least one qubit");
  if (initial_.dims() != Dims(static_cast<std::size_t>(n_), 2))
    throw ArgumentError("RegisterProgram: initial state must be an n-qubit ket");
  if (!initial_.is_unit(1e-10)) throw ValidationError("RegisterProgram: initial state not unit");
  if (steps_.empty()) throw ArgumentError("RegisterProgram: no steps");
  if (!(duration_ > 0.0)) throw ArgumentError("RegisterProgram: duration must be positive");
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    if (static_cast<int>(steps_[k].size()) != n_)
      throw ArgumentError("RegisterProgram: step " + std::to_string(k + 1) +
                          " must hold one unitary per qubit");
    for (const auto& u : steps_[k])
      if (u.dim() != 2) throw ArgumentError("RegisterProgram: unitaries must be 2x2");
  }
}

namespace {
std::vector<MatrixXc> step_values(const std::vector<UnitaryCurve>& step, double t) {
  std::vector<MatrixXc> out;
  for (const auto& u : step) out.push_back(u.value(t));
  return out;
}
}  // namespace

Ket RegisterProgram::state_before(int k) const {
  if (k < 1 || k > step_count())
    throw ArgumentError("RegisterProgram: step " + std::to_string(k) + " out of range");
  Ket s = initial_;
  for (int j = 0; j < k - 1; ++j) s = apply_local_unitaries(s, step_values(steps_[j], duration_));
  return s;
}

Ket RegisterProgram::state(int k, double t) const {
  return apply_local_unitaries(state_before(k), step_values(steps_[k - 1], t));
}

std::pair<int, double> RegisterProgram::locate(double tau) const {
  const double total = duration_ * step_count();
  if (!(tau >= 0.0 && tau <= total * (1.0 + 1e-12)))
    throw RangeError("RegisterProgram: parameter outside [0, steps*duration]");
  int k = static_cast<int>(std::ceil(tau / duration_ - 1e-12));
  k = std::clamp(k, 1, step_count());
  return {k, tau - (k - 1) * duration_};
}

Ket uniform_superposition(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  return Ket(VectorXc::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))),
             Dims(static_cast<std::size_t>(n), 2));
}

TangentVector register_tangent(const RegisterProgram& prog, int k, double t, DiffMethod method) {
  if (k < 1 || k > prog.step_count())
    throw ArgumentError("register_tangent: step " + std::to_string(k) + " out of range");
  const Ket prev = prog.state_before(k);
  const auto& step = prog.steps()[k - 1];
  const std::vector<MatrixXc> us = step_values(step, t);
  const auto kind = method.kind == DiffMethod::Kind::automatic ? DiffMethod::Kind::analytic
                                                               : method.kind;
  VectorXc dir = VectorXc::Zero(prev.size());
  for (std::size_t i = 0; i < step.size(); ++i) {
    MatrixXc du;
    if (kind == DiffMethod::Kind::analytic) {
      if (step[i].is_constant()) continue;
      du = step[i].derivative(t);
    } else {
      du = numeric_derivative([&](double s) { return step[i].value(s); }, t, kind, method.h, -kInf,
                              kInf);
    }
    std::vector<MatrixXc> ops = us;
    ops[i] = std::move(du);
    dir += apply_local_operators<double>(prev.amplitudes(), prev.dims(), ops);
  }
  Ket base(apply_local_operators<double>(prev.amplitudes(), prev.dims(), us), prev.dims());
  return TangentVector(std::move(base), std::move(dir), "t");
}

// ---------------------------------------------------------- mixed states

MatrixXc projector_differential(const VectorXc& psi, const VectorXc& dpsi) {
  return psi * dpsi.adjoint() + dpsi * psi.adjoint();
}

HermitianOp pseudo_pure_state(const Ket& psi, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw ArgumentError("pseudo_pure_state: epsilon must lie in [0, 1]");
  if (!psi.is_unit(1e-10)) throw ValidationError("pseudo_pure_state: state is not unit-norm");
  const auto d = psi.size();
  MatrixXc m = (1.0 - epsilon) / static_cast<double>(d) * MatrixXc::Identity(d, d) +
               epsilon * psi.amplitudes() * psi.amplitudes().adjoint();
  return HermitianOp(std::move(m), psi.dims());
}

HermitianOp pseudo_pure_differential(const Ket& psi, const TangentVector& dpsi, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ArgumentError("pseudo_pure_differential: epsilon must lie in (0, 1]");
  if (!psi.is_unit(1e-10)) throw ValidationError("pseudo_pure_differential: psi is not unit-norm");
  if (dpsi.base().size() != psi.size() ||
      (dpsi.base().amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() > 1e-10)
    throw ArgumentError("pseudo_pure_differential: tangent is not based at psi");
  return HermitianOp(epsilon * projector_differential(psi.amplitudes(), dpsi.direction()),
                     psi.dims());
}

Ensemble::Ensemble(std::vector<double> weights, std::vector<ComponentPair> components)
    : w_(std::move(weights)), c_(std::move(components)) {
  if (c_.empty() || w_.size() != c_.size())
    throw ArgumentError("Ensemble: need one weight per component");
  double sum = 0.0;
  for (double w : w_) {
    if (!(w > 0.0)) throw ValidationError("Ensemble: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("Ensemble: weights sum to " + std::to_string(sum) + ", not 1");
  for (const auto& c : c_)
    if (c.first.dim() != c_.front().first.dim() || c.second.dim() != c_.front().second.dim())
      throw ArgumentError("Ensemble: components differ in factor dimensions");
}

Dims Ensemble::dims() const { return {c_.front().first.dim(), c_.front().second.dim()}; }

std::vector<ComponentJets> component_jets(const Ensemble& ens, double t, DiffMethod method) {
  std::vector<ComponentJets> out;
  for (const auto& c : ens.components()) {
    const FactorJets j = factor_jets({c.first, c.second}, {c.first_frozen, c.second_frozen}, t,
                                     method);
    const auto& a = j.states[0].amplitudes();
    const auto& b = j.states[1].amplitudes();
    out.push_back({a * a.adjoint(), b * b.adjoint(), projector_differential(a, j.derivatives[0]),
                   projector_differential(b, j.derivatives[1])});
  }
  return out;
}

HermitianOp Ensemble::state(double t) const {
  const Dims d = dims();
  MatrixXc m = MatrixXc::Zero(total_dim(d), total_dim(d));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const MatrixXc a = projector(factor_state(c_[i].first, c_[i].first_frozen, t)).matrix();
    const MatrixXc b = projector(factor_state(c_[i].second, c_[i].second_frozen, t)).matrix();
    m += w_[i] * kron(a, b);
  }
  return HermitianOp(std::move(m), d);
}

HermitianOp separable_mixed_differential(const Ensemble& ens, double t, DiffMethod method) {
  const auto jets = component_jets(ens, t, method);
  const Dims d = ens.dims();
  MatrixXc m = MatrixXc::Zero(total_dim(d), total_dim(d));
  for (std::size_t i = 0; i < jets.size(); ++i)
    m += ens.weights()[i] * (kron(jets[i].rho1, jets[i].drho2) + kron(jets[i].drho1, jets[i].rho2));
  return HermitianOp(std::move(m), d);
}

// ---------------------------------------------------------- propagators

MatrixXc infinitesimal_composition(const HermitianOp& h, double T, long N) {
  if (N < 1) throw ArgumentError("infinitesimal_composition: N must be >= 1");
  const auto d = h.side();
  MatrixXc step = MatrixXc::Identity(d, d) - kI * (T / static_cast<double>(N)) * h.matrix();
  MatrixXc out = MatrixXc::Identity(d, d);
  for (long e = N; e > 0; e >>= 1) {
    if (e & 1) out = out * step;
    step = step * step;
  }
  return out;
}

MatrixXc exact_propagator(const HermitianOp& h, double T) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h.matrix());
  return spectral_exp(es.eigenvalues(), es.eigenvectors(), T);
}

}  // namespace tangle
