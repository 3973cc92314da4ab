#include "tangle/app/verify.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "tangle/app/report.hpp"
#include "tangle/channels.hpp"
#include "tangle/geometry.hpp"
#include "tangle/mixed_witness.hpp"
#include "tangle/random.hpp"

namespace tangle::app {

namespace {

int random_dim(Rng& rng) { return std::uniform_int_distribution<int>(2, 4)(rng); }

FactorCurve random_curve(int dim, Rng& rng) {
  return FactorCurve(LocalHamiltonianCurve(random_hermitian({dim}, rng), random_ket({dim}, rng)));
}

ProductTrajectory random_product(int n, Rng& rng) {
  std::vector<FactorCurve> f;
  for (int i = 0; i < n; ++i) f.push_back(random_curve(random_dim(rng), rng));
  return ProductTrajectory(std::move(f));
}

// Random direction with Re<psi|d> = 0.
VectorXc norm_preserving(const Ket& psi, Rng& rng) {
  const VectorXc v = random_vector(psi.size(), rng);
  return v - psi.amplitudes().dot(v).real() * psi.amplitudes();
}

// Runs `trial` for each seed and records the worst value against `bound`.
// `upper` selects whether the bound is an upper or a lower limit.
PropertyResult sweep(std::string name, int trials, std::uint64_t seed, double bound, bool upper,
                     const std::function<double(Rng&)>& trial) {
  double worst = upper ? 0.0 : std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(std::hash<std::string>{}(name))};
    Rng rng(seq);
    const double v = trial(rng);
    worst = upper ? std::max(worst, v) : std::min(worst, v);
  }
  const bool ok = trials == 0 || (upper ? worst < bound : worst > bound);
  return {std::move(name), ok,
          (upper ? "max " : "min ") + format_double(worst) + (upper ? " < " : " > ") +
              format_double(bound) + " over " + std::to_string(trials) + " trials"};
}

}  // namespace

std::vector<PropertyResult> run_property_sweeps(int trials, std::uint64_t seed) {
  std::vector<PropertyResult> out;

  out.push_back(sweep("schmidt_reconstruction", trials, seed, 1e-10, true, [](Rng& rng) {
    const Dims dims{random_dim(rng), random_dim(rng), random_dim(rng)};
    const Ket k = random_ket(dims, rng);
    const Cut cut = Cut::split({0}, 3);
    return (schmidt(k, cut).reconstruct(dims, cut) - k.amplitudes()).norm();
  }));

  out.push_back(sweep("entropy_local_unitary_invariance", trials, seed, 1e-9, true, [](Rng& rng) {
    const Dims dims{random_dim(rng), random_dim(rng)};
    const Ket k = random_ket(dims, rng);
    const std::vector<MatrixXc> us{random_unitary(dims[0], rng), random_unitary(dims[1], rng)};
    const Cut cut = Cut::split({0}, 2);
    return std::abs(entanglement_entropy(apply_local_unitaries(k, us), cut) -
                    entanglement_entropy(k, cut));
  }));

  out.push_back(sweep("partial_trace_preserves_trace", trials, seed, 1e-10, true, [](Rng& rng) {
    const Dims dims{random_dim(rng), random_dim(rng)};
    const HermitianOp h = random_hermitian(dims, rng);
    const Cut cut = Cut::split({0}, 2);
    return std::abs(partial_trace(h, cut, Side::left).trace() - h.trace());
  }));

  out.push_back(sweep("fs_distance_symmetric_bounded", trials, seed, 1e-12, true, [](Rng& rng) {
    const Dims dims{random_dim(rng)};
    const Ket a = random_ket(dims, rng), b = random_ket(dims, rng);
    const double d = fs_distance(a, b);
    return std::abs(d - fs_distance(b, a)) + std::max(0.0, d - 2.0);
  }));

  out.push_back(sweep("channel_gap", trials, seed, 1e-10, true, [](Rng& rng) {
    const ProductTrajectory traj = random_product(2, rng);
    const double t = uniform(rng, -1.0, 1.0);
    return std::max(reduced_tangent_channel(traj, t, 1).gap, reduced_tangent_channel(traj, t, 2).gap);
  }));

  out.push_back(sweep("bilocal_product_real", trials, seed, 1e-12, true, [](Rng& rng) {
    const ProductTrajectory traj = random_product(2, rng);
    return bilocal_inner_check(traj, uniform(rng, -1.0, 1.0)).reality_gap;
  }));

  out.push_back(sweep("tangent_entropy_generic", trials, seed, 1e-8, false, [](Rng& rng) {
    const int n = std::uniform_int_distribution<int>(2, 3)(rng);
    const ProductTrajectory traj = random_product(n, rng);
    const TangentVector tv = horizontal_tangent(product_tangent(traj, uniform(rng, -1.0, 1.0)));
    return tangent_entropy(tv, Cut::split({0}, n));
  }));

  out.push_back(sweep("product_differential_traces_vanish", trials, seed, 1e-10, true, [](Rng& rng) {
    const int d1 = random_dim(rng), d2 = random_dim(rng);
    MatrixXc sum = MatrixXc::Zero(d1 * d2, d1 * d2);
    const int terms = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int k = 0; k < terms; ++k) {
      const Ket a = random_ket({d1}, rng), b = random_ket({d2}, rng);
      const MatrixXc da = projector_differential(a.amplitudes(), norm_preserving(a, rng));
      const MatrixXc db = projector_differential(b.amplitudes(), norm_preserving(b, rng));
      sum += uniform(rng, 0.0, 1.0) * kron(da, db);
    }
    const WitnessReport w = differential_trace_witness(HermitianOp(sum, {d1, d2}, 1e-10));
    return std::max(w.tr1_norm, w.tr2_norm);
  }));

  return out;
}

}  // namespace tangle::app
