#pragma once

// Bipartite entanglement of pure states and operators: Schmidt decomposition,
// entropy in ebits, Bell-basis coefficients, two-qubit correlations, CHSH and
// partial-transpose negativity.

#include <array>
#include <cmath>

#include "tangle/statespace.hpp"

namespace tangle {

template <typename Real>
struct BasicSchmidtData {
  std::vector<Real> coefficients;  // descending, non-negative
  std::vector<BasicKet<Real>> left_basis;
  std::vector<BasicKet<Real>> right_basis;
  Real input_norm = Real(1);  // norm of the state before normalization

  // sum_k c_k |l_k> (x) |r_k>, laid out in the original factor ordering
  VectorC<Real> reconstruct(const Dims& dims, const Cut& cut) const {
    detail::SubsetIndexer l(dims, cut.left), r(dims, cut.right);
    MatrixC<Real> m = MatrixC<Real>::Zero(l.dim(), r.dim());
    for (std::size_t k = 0; k < coefficients.size(); ++k)
      m += coefficients[k] * left_basis[k].amplitudes() * right_basis[k].amplitudes().transpose();
    VectorC<Real> out(total_dim(dims));
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = input_norm * m(l(i), r(i));
    return out;
  }
};

using SchmidtData = BasicSchmidtData<double>;

template <typename Real>
BasicSchmidtData<Real> schmidt(const BasicKet<Real>& state, const Cut& cut) {
  const Real n = state.norm();
  if (!(n > Real(0))) throw DegenerateInputError("schmidt: zero vector");
  const MatrixC<Real> m = cut_matrix<Real>(state.amplitudes() / n, state.dims(), cut);
  Eigen::JacobiSVD<MatrixC<Real>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  detail::SubsetIndexer l(state.dims(), cut.left), r(state.dims(), cut.right);

  BasicSchmidtData<Real> out;
  out.input_norm = n;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    VectorC<Real> lk = svd.matrixU().col(k);
    VectorC<Real> rk = svd.matrixV().col(k).conjugate();
    // Phase convention: first non-negligible left amplitude real positive.
    for (Eigen::Index i = 0; i < lk.size(); ++i) {
      if (std::abs(lk(i)) > Real(1e-12)) {
        const std::complex<Real> ph = std::abs(lk(i)) / lk(i);
        lk *= ph;
        rk /= ph;
        break;
      }
    }
    out.coefficients.push_back(s(k));
    out.left_basis.emplace_back(std::move(lk), l.sub_dims());
    out.right_basis.emplace_back(std::move(rk), r.sub_dims());
  }
  return out;
}

/// Shannon entropy (base 2) of squared Schmidt coefficients, with 0 log 0 = 0.
template <typename Real>
Real entropy_from_coefficients(const std::vector<Real>& coeffs) {
  Real h(0);
  for (Real c : coeffs) {
    const Real p = c * c;
    if (p > Real(0)) h -= p * std::log2(p);
  }
  return std::max(h, Real(0));
}

template <typename Real>
Real entanglement_entropy(const BasicKet<Real>& state, const Cut& cut) {
  return entropy_from_coefficients(schmidt(state, cut).coefficients);
}

template <typename Real>
struct BasicBellCoefficients {
  std::complex<Real> phi_plus, phi_minus, psi_plus, psi_minus;

  std::array<std::complex<Real>, 4> as_array() const {
    return {phi_plus, phi_minus, psi_plus, psi_minus};
  }

  VectorC<Real> reconstruct() const {
    const Real r = Real(1) / std::sqrt(Real(2));
    VectorC<Real> v(4);
    v << r * (phi_plus + phi_minus), r * (psi_plus + psi_minus), r * (psi_plus - psi_minus),
        r * (phi_plus - phi_minus);
    return v;
  }
};

using BellCoefficients = BasicBellCoefficients<double>;

namespace detail {
template <typename Real>
void require_two_qubits(const BasicKet<Real>& s, const char* what) {
  if (s.dims() != Dims{2, 2}) throw ArgumentError(std::string(what) + ": requires dims [2,2]");
}
}  // namespace detail

/// Coefficients on (Phi+, Phi-, Psi+, Psi-) with Phi+- = (|00> +- |11>)/sqrt2,
/// Psi+- = (|01> +- |10>)/sqrt2.
template <typename Real>
BasicBellCoefficients<Real> bell_decompose(const BasicKet<Real>& state) {
  detail::require_two_qubits(state, "bell_decompose");
  const auto& a = state.amplitudes();
  const Real r = Real(1) / std::sqrt(Real(2));
  return {r * (a(0) + a(3)), r * (a(0) - a(3)), r * (a(1) + a(2)), r * (a(1) - a(2))};
}

template <typename Real>
MatrixC<Real> pauli(int axis) {
  using C = std::complex<Real>;
  MatrixC<Real> m(2, 2);
  switch (axis) {
    case 0: m << C(0), C(1), C(1), C(0); break;
    case 1: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case 2: m << C(1), C(0), C(0), C(-1); break;
    default: throw ArgumentError("pauli: axis must be 0, 1 or 2");
  }
  return m;
}

template <typename Real>
MatrixC<Real> sigma_dot(const Eigen::Matrix<Real, 3, 1>& n) {
  return n(0) * pauli<Real>(0) + n(1) * pauli<Real>(1) + n(2) * pauli<Real>(2);
}

/// Pair of unit Bloch directions for the two measured qubits.
template <typename Real>
struct BasicMeasurementSetting {
  using Vec3 = Eigen::Matrix<Real, 3, 1>;
  Vec3 a, b;

  BasicMeasurementSetting(Vec3 a_, Vec3 b_) : a(std::move(a_)), b(std::move(b_)) {
    if (std::abs(a.norm() - Real(1)) > Real(1e-12) || std::abs(b.norm() - Real(1)) > Real(1e-12))
      throw ValidationError("MeasurementSetting: directions must be unit vectors");
  }
};

using MeasurementSetting = BasicMeasurementSetting<double>;

template <typename Real>
Real correlation(const BasicKet<Real>& state, const BasicMeasurementSetting<Real>& setting) {
  detail::require_two_qubits(state, "correlation");
  if (!state.is_unit(Real(1e-10))) throw ValidationError("correlation: state is not unit-norm");
  const MatrixC<Real> op = kron(sigma_dot<Real>(setting.a), sigma_dot<Real>(setting.b));
  return state.amplitudes().dot(op * state.amplitudes()).real();
}

/// T_ij = <sigma_i (x) sigma_j>
template <typename Real>
Eigen::Matrix<Real, 3, 3> correlation_matrix(const BasicKet<Real>& state) {
  detail::require_two_qubits(state, "correlation_matrix");
  Eigen::Matrix<Real, 3, 3> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = state.amplitudes()
                    .dot(kron(pauli<Real>(i), pauli<Real>(j)) * state.amplitudes())
                    .real();
  return t;
}

/// Maximal CHSH combination over all measurement directions:
/// 2 sqrt(s1^2 + s2^2) for the two largest singular values of T.
template <typename Real>
Real chsh_value(const BasicKet<Real>& state) {
  if (!state.is_unit(Real(1e-10))) throw ValidationError("chsh_value: state is not unit-norm");
  const Eigen::Matrix<Real, 3, 1> s =
      Eigen::JacobiSVD<Eigen::Matrix<Real, 3, 3>>(correlation_matrix(state)).singularValues();
  return Real(2) * std::sqrt(s(0) * s(0) + s(1) * s(1));
}

enum class PptStatus { conclusive, necessary_only };

template <typename Real>
struct BasicPptResult {
  Real negativity;
  Real min_eigenvalue;  // of the partial transpose
  PptStatus status;     // conclusive only for 2x2 and 2x3 splits
};

using PptResult = BasicPptResult<double>;

template <typename Real>
BasicPptResult<Real> ppt_negativity(const BasicHermitianOp<Real>& op, const Cut& cut) {
  const auto pt = partial_transpose(op, cut);
  const VectorR<Real> ev = pt.eigenvalues();
  Real neg(0);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < Real(0)) neg -= ev(i);
  detail::SubsetIndexer l(op.dims(), cut.left), r(op.dims(), cut.right);
  const auto a = std::min(l.dim(), r.dim()), b = std::max(l.dim(), r.dim());
  const bool conclusive = a == 2 && (b == 2 || b == 3);
  return {neg, ev.minCoeff(), conclusive ? PptStatus::conclusive : PptStatus::necessary_only};
}

}  // namespace tangle
