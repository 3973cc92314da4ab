#pragma once

// Dense state-space substrate: kets and Hermitian operators on finite tensor
// products, bipartitions, tensor products, partial traces and local operators.
//
// Multi-index convention: the leftmost factor is the slowest-varying index, so
// |i1 i2 ... in> sits at offset i1*d2*...*dn + ... + in.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tangle/errors.hpp"
#include "tangle/types.hpp"

namespace tangle {

inline constexpr double kConstructTol = 1e-12;

inline Eigen::Index total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), Eigen::Index{1},
                         [](Eigen::Index a, int d) { return a * d; });
}

namespace detail {

inline void check_dims(const Dims& dims, Eigen::Index size, const char* what) {
  if (dims.empty()) throw ArgumentError(std::string(what) + ": empty dims");
  for (int d : dims) {
    if (d < 2)
      throw ArgumentError(std::string(what) + ": factor dimension " + std::to_string(d) +
                          " (must be >= 2)");
  }
  if (total_dim(dims) != size)
    throw ArgumentError(std::string(what) + ": size " + std::to_string(size) +
                        " does not match product of dims " + std::to_string(total_dim(dims)));
}

// strides[i] = product of dims[i+1..]
inline std::vector<Eigen::Index> strides(const Dims& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

}  // namespace detail

template <typename Real>
class BasicKet {
 public:
  using Scalar = std::complex<Real>;
  using Vector = VectorC<Real>;

  explicit BasicKet(Vector amplitudes)
      : BasicKet(amplitudes, Dims{static_cast<int>(amplitudes.size())}) {}

  BasicKet(Vector amplitudes, Dims dims, bool require_unit = false)
      : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    detail::check_dims(dims_, amps_.size(), "Ket");
    const Real n = amps_.norm();
    if (!std::isfinite(static_cast<double>(n))) throw ValidationError("Ket: non-finite norm");
    if (require_unit && !is_unit(Real(kConstructTol)))
      throw ValidationError("Ket: norm " + std::to_string(static_cast<double>(n)) +
                            " is not 1");
  }

  static BasicKet basis(int dim, int index) {
    if (index < 0 || index >= dim) throw ArgumentError("Ket::basis: index out of range");
    Vector v = Vector::Zero(dim);
    v(index) = Scalar(1);
    return BasicKet(std::move(v), Dims{dim});
  }

  const Vector& amplitudes() const { return amps_; }
  const Dims& dims() const { return dims_; }
  Eigen::Index size() const { return amps_.size(); }
  int factors() const { return static_cast<int>(dims_.size()); }
  Real norm() const { return amps_.norm(); }
  bool is_unit(Real tol = Real(kConstructTol)) const { return std::abs(norm() - Real(1)) < tol; }
  Scalar operator[](Eigen::Index i) const { return amps_(i); }

  BasicKet normalized() const {
    const Real n = norm();
    if (n == Real(0)) throw DegenerateInputError("Ket: cannot normalize the zero vector");
    return BasicKet(amps_ / n, dims_);
  }

 private:
  Vector amps_;
  Dims dims_;
};

template <typename Real>
class BasicHermitianOp {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = MatrixC<Real>;

  BasicHermitianOp(Matrix matrix, Dims dims, Real tol = Real(kConstructTol))
      : m_(std::move(matrix)), dims_(std::move(dims)) {
    if (m_.rows() != m_.cols()) throw ArgumentError("HermitianOp: matrix is not square");
    detail::check_dims(dims_, m_.rows(), "HermitianOp");
    const Real asym = m_.rows() == 0 ? Real(0) : (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= tol))
      throw ValidationError("HermitianOp: not Hermitian (max |M - M^dag| = " +
                            std::to_string(static_cast<double>(asym)) + ")");
  }

  const Matrix& matrix() const { return m_; }
  const Dims& dims() const { return dims_; }
  Eigen::Index side() const { return m_.rows(); }
  int factors() const { return static_cast<int>(dims_.size()); }
  Scalar trace() const { return m_.trace(); }
  Real frobenius_norm() const { return m_.norm(); }

  VectorR<Real> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

 private:
  Matrix m_;
  Dims dims_;
};

using Ket = BasicKet<double>;
using HermitianOp = BasicHermitianOp<double>;

enum class Side { left, right };

// Bipartition of factor indices (0-based internally; labels print 1-based).
struct Cut {
  std::vector<int> left;
  std::vector<int> right;

  // Left side given, right side is every other factor.
  static Cut split(std::vector<int> left, int factors) {
    std::sort(left.begin(), left.end());
    std::vector<int> right;
    for (int i = 0; i < factors; ++i)
      if (!std::binary_search(left.begin(), left.end(), i)) right.push_back(i);
    Cut c{std::move(left), std::move(right)};
    c.validate(factors);
    return c;
  }

  void validate(int factors) const {
    if (left.empty() || right.empty()) throw ArgumentError("Cut: both sides must be nonempty");
    std::vector<int> all(left);
    all.insert(all.end(), right.begin(), right.end());
    std::sort(all.begin(), all.end());
    if (static_cast<int>(all.size()) != factors ||
        std::adjacent_find(all.begin(), all.end()) != all.end() || all.front() != 0 ||
        all.back() != factors - 1)
      throw ArgumentError("Cut " + label() + " is not a bipartition of " +
                          std::to_string(factors) + " factors");
  }

  const std::vector<int>& side(Side s) const { return s == Side::left ? left : right; }

  std::string label() const {
    auto join = [](const std::vector<int>& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i] + 1);
      }
      return out;
    };
    return join(left) + "|" + join(right);
  }

  friend bool operator==(const Cut&, const Cut&) = default;
  friend auto operator<=>(const Cut&, const Cut&) = default;
};

namespace detail {

// Offset of a global index restricted to a subset of factors (row-major over the subset).
class SubsetIndexer {
 public:
  SubsetIndexer(const Dims& dims, const std::vector<int>& subset)
      : dims_(dims), subset_(subset), strides_(strides(dims)) {
    for (int f : subset_)
      if (f < 0 || f >= static_cast<int>(dims_.size()))
        throw ArgumentError("factor index " + std::to_string(f) + " out of range");
  }

  Eigen::Index operator()(Eigen::Index global) const {
    Eigen::Index out = 0;
    for (int f : subset_) out = out * dims_[f] + (global / strides_[f]) % dims_[f];
    return out;
  }

  Eigen::Index dim() const {
    Eigen::Index d = 1;
    for (int f : subset_) d *= dims_[f];
    return d;
  }

  Dims sub_dims() const {
    Dims d;
    for (int f : subset_) d.push_back(dims_[f]);
    return d;
  }

 private:
  const Dims& dims_;
  const std::vector<int>& subset_;
  std::vector<Eigen::Index> strides_;
};

}  // namespace detail

template <typename Derived>
MatrixC<typename Derived::RealScalar> kron(const Eigen::MatrixBase<Derived>& a,
                                           const Eigen::MatrixBase<Derived>& b) {
  using Real = typename Derived::RealScalar;
  MatrixC<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real>
BasicKet<Real> tensor_product(std::span<const BasicKet<Real>> factors) {
  if (factors.empty()) throw ArgumentError("tensor_product: empty factor list");
  VectorC<Real> v = factors.front().amplitudes();
  Dims dims = factors.front().dims();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    v = kron(v, factors[i].amplitudes());
    dims.insert(dims.end(), factors[i].dims().begin(), factors[i].dims().end());
  }
  return BasicKet<Real>(std::move(v), std::move(dims));
}

template <typename Real>
BasicKet<Real> tensor_product(std::initializer_list<BasicKet<Real>> factors) {
  return tensor_product(std::span<const BasicKet<Real>>(factors.begin(), factors.size()));
}

template <typename Real>
BasicKet<Real> tensor_product(const std::vector<BasicKet<Real>>& factors) {
  return tensor_product(std::span<const BasicKet<Real>>(factors));
}

template <typename Real>
BasicHermitianOp<Real> tensor_product(const BasicHermitianOp<Real>& a,
                                      const BasicHermitianOp<Real>& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return BasicHermitianOp<Real>(kron(a.matrix(), b.matrix()), std::move(dims));
}

template <typename Real>
std::complex<Real> inner(const BasicKet<Real>& a, const BasicKet<Real>& b) {
  if (a.size() != b.size()) throw ArgumentError("inner: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

template <typename Real>
BasicHermitianOp<Real> projector(const BasicKet<Real>& k) {
  return BasicHermitianOp<Real>(k.amplitudes() * k.amplitudes().adjoint(), k.dims());
}

// Trace out the factors not on side `keep` of `cut`.
template <typename Real>
MatrixC<Real> partial_trace(const MatrixC<Real>& m, const Dims& dims, const Cut& cut, Side keep) {
  cut.validate(static_cast<int>(dims.size()));
  if (m.rows() != total_dim(dims) || m.cols() != m.rows())
    throw ArgumentError("partial_trace: operator does not match dims");
  const auto& kept = cut.side(keep);
  const auto& traced = cut.side(keep == Side::left ? Side::right : Side::left);
  detail::SubsetIndexer kidx(dims, kept), tidx(dims, traced);
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> k(n), t(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k[i] = kidx(i);
    t[i] = tidx(i);
  }
  MatrixC<Real> out = MatrixC<Real>::Zero(kidx.dim(), kidx.dim());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (t[i] == t[j]) out(k[i], k[j]) += m(i, j);
  return out;
}

template <typename Real>
BasicHermitianOp<Real> partial_trace(const BasicHermitianOp<Real>& op, const Cut& cut, Side keep) {
  MatrixC<Real> out = partial_trace(op.matrix(), op.dims(), cut, keep);
  out = (out + out.adjoint()).eval() / Real(2);
  detail::SubsetIndexer kidx(op.dims(), cut.side(keep));
  return BasicHermitianOp<Real>(std::move(out), kidx.sub_dims());
}

// Transpose the factors on the right side of `cut`.
template <typename Real>
BasicHermitianOp<Real> partial_transpose(const BasicHermitianOp<Real>& op, const Cut& cut) {
  cut.validate(op.factors());
  const Dims& dims = op.dims();
  detail::SubsetIndexer ridx(dims, cut.right);
  const auto st = detail::strides(dims);
  const Eigen::Index n = op.side();
  // Swap the right-side digits of (i, j).
  auto swap_right = [&](Eigen::Index i, Eigen::Index j) {
    Eigen::Index ii = i, jj = j;
    for (int f : cut.right) {
      const Eigen::Index di = (i / st[f]) % dims[f], dj = (j / st[f]) % dims[f];
      ii += (dj - di) * st[f];
      jj += (di - dj) * st[f];
    }
    return std::pair{ii, jj};
  };
  MatrixC<Real> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto [ii, jj] = swap_right(i, j);
      out(i, j) = op.matrix()(ii, jj);
    }
  return BasicHermitianOp<Real>(std::move(out), dims);
}

// Amplitudes reshaped into a (left dim) x (right dim) matrix across `cut`.
template <typename Real>
MatrixC<Real> cut_matrix(const VectorC<Real>& amps, const Dims& dims, const Cut& cut) {
  cut.validate(static_cast<int>(dims.size()));
  if (amps.size() != total_dim(dims)) throw ArgumentError("cut_matrix: size/dims mismatch");
  detail::SubsetIndexer l(dims, cut.left), r(dims, cut.right);
  MatrixC<Real> m = MatrixC<Real>::Zero(l.dim(), r.dim());
  for (Eigen::Index i = 0; i < amps.size(); ++i) m(l(i), r(i)) = amps(i);
  return m;
}

// Apply one operator per factor, A1 (x) A2 (x) ... (x) An, without forming the Kronecker product.
template <typename Real>
VectorC<Real> apply_local_operators(const VectorC<Real>& amps, const Dims& dims,
                                    std::span<const MatrixC<Real>> ops) {
  if (ops.size() != dims.size())
    throw ArgumentError("apply_local_operators: need one operator per factor");
  const auto st = detail::strides(dims);
  VectorC<Real> cur = amps;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    const auto& op = ops[f];
    const Eigen::Index d = dims[f];
    if (op.rows() != d || op.cols() != d)
      throw ArgumentError("apply_local_operators: factor " + std::to_string(f + 1) +
                          " operator has wrong shape");
    const Eigen::Index post = st[f];
    const Eigen::Index pre = cur.size() / (d * post);
    VectorC<Real> next = VectorC<Real>::Zero(cur.size());
    for (Eigen::Index p = 0; p < pre; ++p)
      for (Eigen::Index q = 0; q < post; ++q)
        for (Eigen::Index r = 0; r < d; ++r) {
          std::complex<Real> acc(0);
          for (Eigen::Index c = 0; c < d; ++c) acc += op(r, c) * cur((p * d + c) * post + q);
          next((p * d + r) * post + q) = acc;
        }
    cur = std::move(next);
  }
  return cur;
}

template <typename Real>
BasicKet<Real> apply_local_unitaries(const BasicKet<Real>& state,
                                     std::span<const MatrixC<Real>> unitaries,
                                     Real tol = Real(1e-10)) {
  if (unitaries.size() != state.dims().size())
    throw ArgumentError("apply_local_unitaries: need one unitary per factor");
  for (std::size_t f = 0; f < unitaries.size(); ++f) {
    const auto& u = unitaries[f];
    if (u.rows() != state.dims()[f] || u.cols() != state.dims()[f])
      throw ArgumentError("apply_local_unitaries: factor " + std::to_string(f + 1) +
                          " has wrong shape");
    const Real err =
        (u.adjoint() * u - MatrixC<Real>::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (err > tol)
      throw ValidationError("apply_local_unitaries: factor " + std::to_string(f + 1) +
                            " is not unitary");
  }
  return BasicKet<Real>(apply_local_operators(state.amplitudes(), state.dims(), unitaries),
                        state.dims());
}

template <typename Real>
BasicKet<Real> apply_local_unitaries(const BasicKet<Real>& state,
                                     const std::vector<MatrixC<Real>>& unitaries) {
  return apply_local_unitaries(state, std::span<const MatrixC<Real>>(unitaries));
}

}  // namespace tangle
