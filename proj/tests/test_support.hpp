#pragma once

// Independent oracles and helpers shared by the unit tests and the acceptance suite.
// Nothing here calls into the library's own tensor or trace code.

#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "tangle/random.hpp"

namespace tangle::testing {

inline constexpr double kPi = std::numbers::pi;

inline Rng rng_for(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

inline VectorXc ket2(cplx a, cplx b) {
  VectorXc v(2);
  v << a, b;
  return v;
}

inline VectorXc bloch(double theta, double phi = 0.0) {
  return ket2(std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2));
}

// Psi_{ij} = a_i b_j, leftmost index slowest.
inline VectorXc outer_flat(const VectorXc& a, const VectorXc& b) {
  VectorXc out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

inline MatrixXc kron_loops(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Four-index summation: (tr_2 M)_{ik} = sum_j M_{(ij),(kj)}, (tr_1 M)_{jl} = sum_i M_{(ij),(il)}.
inline MatrixXc trace_out_second(const MatrixXc& m, int d1, int d2) {
  MatrixXc out = MatrixXc::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int k = 0; k < d1; ++k)
      for (int j = 0; j < d2; ++j) out(i, k) += m(i * d2 + j, k * d2 + j);
  return out;
}

inline MatrixXc trace_out_first(const MatrixXc& m, int d1, int d2) {
  MatrixXc out = MatrixXc::Zero(d2, d2);
  for (int j = 0; j < d2; ++j)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i) out(j, l) += m(i * d2 + j, i * d2 + l);
  return out;
}

// Von Neumann entropy (bits) of the first-factor reduced density of a bipartite pure state.
inline double reduced_entropy(const VectorXc& psi, int d1, int d2) {
  const MatrixXc rho = trace_out_second(psi * psi.adjoint(), d1, d2);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXc>(rho).eigenvalues();
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-300) h -= ev(i) * std::log2(ev(i));
  return h;
}

// Fourth-order central differences on a scalar function.
inline double fd4_first(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double fd4_second(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

inline double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace tangle::testing
