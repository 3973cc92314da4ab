#pragma once

// Seeded generators for random states, Hermitian generators and unitaries.

#include <random>

#include "tangle/statespace.hpp"

namespace tangle {

using Rng = std::mt19937_64;

inline cplx random_gaussian_c(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline VectorXc random_vector(Eigen::Index d, Rng& rng) {
  VectorXc v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = random_gaussian_c(rng);
  return v;
}

/// Haar-distributed unit ket with the given factor structure.
inline Ket random_ket(const Dims& dims, Rng& rng) {
  VectorXc v = random_vector(total_dim(dims), rng);
  return Ket(v / v.norm(), dims);
}

/// GUE-like Hermitian matrix, entries of order `scale`.
inline MatrixXc random_hermitian_matrix(Eigen::Index d, Rng& rng, double scale = 1.0) {
  MatrixXc g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = random_gaussian_c(rng);
  return scale * (g + g.adjoint()) / 2.0;
}

inline HermitianOp random_hermitian(const Dims& dims, Rng& rng, double scale = 1.0) {
  return HermitianOp(random_hermitian_matrix(total_dim(dims), rng, scale), dims);
}

/// Haar unitary via QR of a Ginibre matrix with phase correction.
inline MatrixXc random_unitary(Eigen::Index d, Rng& rng) {
  MatrixXc g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = random_gaussian_c(rng);
  Eigen::HouseholderQR<MatrixXc> qr(g);
  MatrixXc q = qr.householderQ();
  const MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace tangle
