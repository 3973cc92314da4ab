#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace tangle {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using VectorC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using VectorXc = VectorC<double>;
using MatrixXc = MatrixC<double>;

// Factor dimensions of a tensor-product space, leftmost factor slowest-varying.
using Dims = std::vector<int>;

}  // namespace tangle
