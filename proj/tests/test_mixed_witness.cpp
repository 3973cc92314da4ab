#include <doctest.h>

#include "tangle/mixed_witness.hpp"
#include "test_support.hpp"

using namespace tangle;
using namespace tangle::testing;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

FactorCurve fixed(double theta, double phi) {
  return FactorCurve(BlochCurve{Polynomial::constant(theta), Polynomial::constant(phi)});
}

FactorCurve turning(double theta0, double rate) {
  return FactorCurve(BlochCurve{Polynomial::affine(theta0, rate), {}});
}

Ensemble rotating() {
  return Ensemble({0.5, 0.5}, {ComponentPair{turning(0, 1), fixed(kPi / 2, 0), false, true},
                               ComponentPair{turning(kPi, -1), fixed(kPi / 2, kPi), false, true}});
}

VectorXc norm_preserving(const VectorXc& psi, Rng& rng) {
  const VectorXc v = random_vector(psi.size(), rng);
  return v - psi.dot(v).real() * psi;
}

const Cut kCut12 = Cut::split({0}, 2);

}  // namespace

TEST_SUITE("mixed_witness") {
  TEST_CASE("rotating ensemble is excluded") {
    const Ensemble ens = rotating();
    for (double t : {0.0, 0.3, 0.8, 1.0}) {
      const WitnessReport w = ensemble_witness(ens, t);
      CHECK(w.verdict == Verdict::product_differential_excluded);
      CHECK(w.tr2_norm > 0.01);
      CHECK(w.tr2_norm == doctest::Approx(std::cos(t) * r2).epsilon(1e-12));
      CHECK(w.tr1_norm < 1e-15);
      REQUIRE(w.operator_gap.has_value());
      CHECK(*w.operator_gap > 0.01);
    }
    CHECK(to_string(Verdict::product_differential_excluded) == "product-differential-excluded");
    CHECK(to_string(Verdict::inconclusive) == "inconclusive");
  }

  TEST_CASE("frozen ensemble is inconclusive") {
    const Ensemble ens({0.3, 0.7}, {ComponentPair{turning(0, 1), fixed(1, 0), true, true},
                                    ComponentPair{turning(1, 1), fixed(2, 0), true, true}});
    const WitnessReport w = ensemble_witness(ens, 0.4);
    CHECK(w.verdict == Verdict::inconclusive);
    CHECK(w.tr1_norm == 0.0);
    CHECK(w.tr2_norm == 0.0);
    CHECK(operator_form_gap(ens, 0.4) == 0.0);
  }

  TEST_CASE("single component with one frozen factor") {
    Rng rng = rng_for(61, 0);
    const FactorCurve a(LocalHamiltonianCurve(random_hermitian({2}, rng), random_ket({2}, rng)));
    const FactorCurve b(LocalHamiltonianCurve(random_hermitian({3}, rng), random_ket({3}, rng)));
    const Ensemble ens({1.0}, {ComponentPair{a, b, false, true}});
    const double t = 0.6;
    const VectorXc pa = a.state(t), da = a.derivative(t), pb = b.state(0.0);
    const MatrixXc expect = kron_loops(pa * da.adjoint() + da * pa.adjoint(), pb * pb.adjoint());
    CHECK(operator_form_gap(ens, t) == doctest::Approx(expect.norm()).epsilon(1e-12));
    CHECK(operator_form_gap(ens, t) > 0.0);
  }

  TEST_CASE("pseudo-pure differential is excluded") {
    const ProductTrajectory traj({turning(0, 1), turning(0, 1)});
    const double t = kPi / 4, eps = 0.1;
    const TangentVector tv = product_tangent(traj, t);
    const WitnessReport w = differential_trace_witness(pseudo_pure_differential(tv.base(), tv, eps));
    const VectorXc psi = bloch(t), dpsi = 0.5 * bloch(t + kPi);
    const MatrixXc dp1 = psi * dpsi.adjoint() + dpsi * psi.adjoint();
    CHECK(w.tr2_norm == doctest::Approx(eps * dp1.norm()).epsilon(1e-12));
    CHECK(w.verdict == Verdict::product_differential_excluded);
    CHECK_FALSE(w.operator_gap.has_value());
  }

  TEST_CASE("witness input validation") {
    CHECK_THROWS_AS(differential_trace_witness(HermitianOp(MatrixXc::Identity(4, 4), Dims{2, 2})),
                    ValidationError);
    CHECK_THROWS_AS(differential_trace_witness(HermitianOp(MatrixXc::Zero(8, 8), Dims{2, 2, 2})),
                    ArgumentError);
  }

  TEST_CASE("no false positives on product-differential operators") {
    for (int trial = 0; trial < 200; ++trial) {
      Rng rng = rng_for(62, trial);
      const int d1 = 2 + trial % 3, d2 = 2 + (trial / 3) % 3;
      MatrixXc sum = MatrixXc::Zero(d1 * d2, d1 * d2);
      const int terms = 1 + trial % 4;
      for (int k = 0; k < terms; ++k) {
        const VectorXc a = random_ket({d1}, rng).amplitudes(), b = random_ket({d2}, rng).amplitudes();
        const VectorXc da = norm_preserving(a, rng), db = norm_preserving(b, rng);
        const MatrixXc dsa = a * da.adjoint() + da * a.adjoint();
        const MatrixXc dsb = b * db.adjoint() + db * b.adjoint();
        sum += uniform(rng, -1, 1) * kron_loops(dsa, dsb);
      }
      const WitnessReport w = differential_trace_witness(HermitianOp(sum, Dims{d1, d2}, 1e-10));
      CHECK(w.tr1_norm < 1e-10);
      CHECK(w.tr2_norm < 1e-10);
      CHECK(w.verdict == Verdict::inconclusive);
    }
  }

  TEST_CASE("ensemble differential identities") {
    for (int trial = 0; trial < 50; ++trial) {
      Rng rng = rng_for(63, trial);
      const auto curve = [&](int d) {
        return FactorCurve(LocalHamiltonianCurve(random_hermitian({d}, rng), random_ket({d}, rng)));
      };
      const int n = 1 + trial % 3;
      std::vector<double> w(static_cast<std::size_t>(n));
      double total = 0;
      for (auto& x : w) total += (x = uniform(rng, 0.1, 1.0));
      for (auto& x : w) x /= total;
      std::vector<ComponentPair> comps;
      for (int i = 0; i < n; ++i) comps.push_back({curve(2), curve(3)});
      const Ensemble ens(w, comps);
      const double t = uniform(rng, -1, 1);
      const HermitianOp d = separable_mixed_differential(ens, t);
      CHECK(std::abs(d.trace()) < 1e-10);
      CHECK(max_abs(d.matrix() - d.matrix().adjoint()) < 1e-14);
      // tr_2 d(rho) = sum p d(rho1).
      MatrixXc expect = MatrixXc::Zero(2, 2);
      for (int i = 0; i < n; ++i) {
        const VectorXc a = comps[i].first.state(t), da = comps[i].first.derivative(t);
        expect += w[i] * (a * da.adjoint() + da * a.adjoint());
      }
      CHECK(std::abs(ensemble_witness(ens, t).tr2_norm - expect.norm()) < 1e-10);
    }
  }

  TEST_CASE("base state separability") {
    VectorXc v(4);
    v << r2, 0, 0, -r2;
    const Ket phi_minus(v, Dims{2, 2});
    CHECK(base_state_separability(pseudo_pure_state(phi_minus, 0.2), kCut12) == Separability::separable);
    CHECK(base_state_separability(pseudo_pure_state(phi_minus, 0.9), kCut12) == Separability::entangled);
    CHECK(base_state_separability(rotating().state(0.4), kCut12) == Separability::separable);
    CHECK(base_state_separability(HermitianOp(MatrixXc::Identity(9, 9) / 9.0, Dims{3, 3}), kCut12) ==
          Separability::undecided);
    CHECK_THROWS_AS(base_state_separability(HermitianOp(MatrixXc::Identity(4, 4), Dims{2, 2}), kCut12),
                    ValidationError);
    MatrixXc neg = MatrixXc::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(base_state_separability(HermitianOp(neg, Dims{2, 2}), kCut12), ValidationError);
    CHECK(to_string(Separability::undecided) == "undecided");
  }
}
