#pragma once

#include <string>

#include "tangle/statespace.hpp"

namespace tangle {

/// A unit base state together with its rate of change per unit curve parameter.
template <typename Real>
class BasicTangentVector {
 public:
  BasicTangentVector(BasicKet<Real> base, VectorC<Real> direction, std::string label = "t")
      : base_(std::move(base)), dir_(std::move(direction)), label_(std::move(label)) {
    if (dir_.size() != base_.size()) throw ArgumentError("TangentVector: shape mismatch");
    if (!base_.is_unit(Real(1e-10))) throw ValidationError("TangentVector: base is not unit-norm");
  }

  const BasicKet<Real>& base() const { return base_; }
  const VectorC<Real>& direction() const { return dir_; }
  const std::string& parameter_label() const { return label_; }
  const Dims& dims() const { return base_.dims(); }

  // Direction as a Ket carrying the base's factor structure (not normalized).
  BasicKet<Real> direction_ket() const { return BasicKet<Real>(dir_, base_.dims()); }

  std::complex<Real> base_overlap() const { return base_.amplitudes().dot(dir_); }

 private:
  BasicKet<Real> base_;
  VectorC<Real> dir_;
  std::string label_;
};

using TangentVector = BasicTangentVector<double>;

/// Removes the component along the base state, leaving the gauge-invariant
/// part of the motion: d' = d - <base|d> base.
template <typename Real>
BasicTangentVector<Real> horizontal_tangent(const BasicTangentVector<Real>& tv) {
  const auto& b = tv.base().amplitudes();
  VectorC<Real> d = tv.direction() - b.dot(tv.direction()) * b;
  return BasicTangentVector<Real>(tv.base(), std::move(d), tv.parameter_label());
}

}  // namespace tangle
