#include <doctest.h>

#include "tangle/entanglement.hpp"
#include "test_support.hpp"

using namespace tangle;
using namespace tangle::testing;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

Ket k0() { return Ket::basis(2, 0); }
Ket k1() { return Ket::basis(2, 1); }
Ket plus() { return Ket(ket2(r2, r2)); }

}  // namespace

TEST_SUITE("statespace") {
  TEST_CASE("ket construction validates dims") {
    CHECK_THROWS_AS(Ket(VectorXc::Zero(4), Dims{2, 3}), ArgumentError);
    CHECK_THROWS_AS(Ket(VectorXc::Zero(2), Dims{1, 2}), ArgumentError);
    CHECK_THROWS_AS(Ket(ket2(1.0, 1.0), Dims{2}, true), ValidationError);
    CHECK(Ket(ket2(1.0, 0.0), Dims{2}, true).is_unit());
  }

  TEST_CASE("hermitian op rejects non-hermitian matrices") {
    MatrixXc m(2, 2);
    m << 1.0, cplx(0, 1), cplx(0, 1), 1.0;
    CHECK_THROWS_AS(HermitianOp(m, Dims{2}), ValidationError);
    CHECK_THROWS_AS(HermitianOp(MatrixXc::Identity(4, 4), Dims{2, 3}), ArgumentError);
  }

  TEST_CASE("cut validation") {
    CHECK_THROWS_AS(Cut::split({}, 2), ArgumentError);
    CHECK_THROWS_AS(Cut::split({0, 1}, 2), ArgumentError);
    CHECK_THROWS_AS(Cut::split({3}, 3), ArgumentError);
    const Cut c = Cut::split({0, 1}, 3);
    CHECK(c.right == std::vector<int>{2});
    CHECK(c.label() == "1,2|3");
  }

  TEST_CASE("tensor product basis cases") {
    const Ket a = tensor_product({k0(), k0()});
    CHECK(a.dims() == Dims{2, 2});
    CHECK(max_abs(a.amplitudes() - (VectorXc(4) << 1, 0, 0, 0).finished()) < 1e-15);
    const Ket b = tensor_product({plus(), k1()});
    CHECK(max_abs(b.amplitudes() - (VectorXc(4) << 0, r2, 0, r2).finished()) < 1e-15);
    CHECK_THROWS_AS(tensor_product(std::vector<Ket>{}), ArgumentError);
  }

  TEST_CASE("tensor product matches the index formula") {
    for (int trial = 0; trial < 50; ++trial) {
      Rng rng = rng_for(11, trial);
      const VectorXc a = random_vector(2, rng), b = random_vector(3, rng);
      const Ket p = tensor_product({Ket(a), Ket(b)});
      CHECK(p.dims() == Dims{2, 3});
      CHECK(max_abs(p.amplitudes() - outer_flat(a, b)) < 1e-14);
      CHECK(std::abs(p.norm() - a.norm() * b.norm()) < 1e-13);
    }
  }

  TEST_CASE("tensor product flattens composite factors") {
    Rng rng = rng_for(12, 0);
    const Ket ab = random_ket({2, 3}, rng), c = random_ket({2}, rng);
    const Ket p = tensor_product({ab, c});
    CHECK(p.dims() == Dims{2, 3, 2});
    CHECK(max_abs(p.amplitudes() - outer_flat(ab.amplitudes(), c.amplitudes())) < 1e-15);
  }

  TEST_CASE("kron matches explicit loops") {
    Rng rng = rng_for(13, 0);
    const MatrixXc a = random_hermitian_matrix(3, rng), b = random_hermitian_matrix(2, rng);
    CHECK(max_abs(kron(a, b) - kron_loops(a, b)) < 1e-15);
  }

  TEST_CASE("partial trace examples") {
    const HermitianOp p00 = projector(tensor_product({k0(), k0()}));
    const Cut cut = Cut::split({0}, 2);
    const HermitianOp r = partial_trace(p00, cut, Side::left);
    CHECK(max_abs(r.matrix() - projector(k0()).matrix()) < 1e-15);

    const Ket phi_minus(VectorXc((VectorXc(4) << r2, 0, 0, -r2).finished()), Dims{2, 2});
    const HermitianOp half = partial_trace(projector(phi_minus), cut, Side::left);
    CHECK(max_abs(half.matrix() - MatrixXc::Identity(2, 2) / 2.0) < 1e-15);
  }

  TEST_CASE("partial trace matches four-index summation") {
    for (int trial = 0; trial < 200; ++trial) {
      Rng rng = rng_for(14, trial);
      const int d1 = 2 + trial % 3, d2 = 2 + (trial / 3) % 3;
      const HermitianOp h = random_hermitian({d1, d2}, rng);
      const Cut cut = Cut::split({0}, 2);
      const HermitianOp keep1 = partial_trace(h, cut, Side::left);
      const HermitianOp keep2 = partial_trace(h, cut, Side::right);
      CHECK(max_abs(keep1.matrix() - trace_out_second(h.matrix(), d1, d2)) < 1e-13);
      CHECK(max_abs(keep2.matrix() - trace_out_first(h.matrix(), d1, d2)) < 1e-13);
      CHECK(std::abs(keep1.trace() - h.trace()) < 1e-12);
      CHECK(std::abs(keep2.trace() - h.trace()) < 1e-12);
      CHECK(max_abs(keep1.matrix() - keep1.matrix().adjoint()) < 1e-15);
    }
  }

  TEST_CASE("partial trace of a product operator") {
    Rng rng = rng_for(15, 0);
    const HermitianOp a = random_hermitian({3}, rng), b = random_hermitian({2}, rng);
    const HermitianOp ab = tensor_product(a, b);
    const HermitianOp r = partial_trace(ab, Cut::split({0}, 2), Side::left);
    CHECK(max_abs(r.matrix() - a.matrix() * b.trace()) < 1e-12);
  }

  TEST_CASE("partial trace over non-contiguous factors") {
    Rng rng = rng_for(16, 0);
    const Ket a = random_ket({2}, rng), b = random_ket({3}, rng), c = random_ket({2}, rng);
    const Ket abc = tensor_product({a, b, c});
    // Keep factors 1 and 3: result is |a><a| (x) |c><c|.
    const HermitianOp r = partial_trace(projector(abc), Cut::split({0, 2}, 3), Side::left);
    CHECK(r.dims() == Dims{2, 2});
    const VectorXc ac = outer_flat(a.amplitudes(), c.amplitudes());
    CHECK(max_abs(r.matrix() - ac * ac.adjoint()) < 1e-14);
  }

  TEST_CASE("inner product") {
    CHECK(std::abs(inner(k0(), k1())) < 1e-15);
    CHECK(std::abs(inner(plus(), k0()) - r2) < 1e-15);
    CHECK_THROWS_AS(inner(k0(), Ket::basis(3, 0)), ArgumentError);
    for (int trial = 0; trial < 20; ++trial) {
      Rng rng = rng_for(17, trial);
      const Ket a(random_vector(4, rng)), b(random_vector(4, rng));
      CHECK(std::abs(std::conj(inner(b, a)) - inner(a, b)) < 1e-15);
      CHECK(std::abs(inner(a, a).imag()) < 1e-15);
    }
  }

  TEST_CASE("local unitaries") {
    const Ket s = tensor_product({k0(), k0()});
    const std::vector<MatrixXc> ids{MatrixXc::Identity(2, 2), MatrixXc::Identity(2, 2)};
    CHECK(max_abs(apply_local_unitaries(s, ids).amplitudes() - s.amplitudes()) < 1e-15);

    const std::vector<MatrixXc> xi{pauli<double>(0), MatrixXc::Identity(2, 2)};
    const Ket flipped = apply_local_unitaries(s, xi);
    CHECK(max_abs(flipped.amplitudes() - tensor_product({k1(), k0()}).amplitudes()) < 1e-15);

    MatrixXc bad = MatrixXc::Identity(2, 2);
    bad(0, 0) = 2.0;
    const std::vector<MatrixXc> nonunitary{MatrixXc::Identity(2, 2), bad};
    try {
      apply_local_unitaries(s, nonunitary);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("factor 2") != std::string::npos);
    }
  }

  TEST_CASE("local unitaries preserve norm and entropy") {
    for (int trial = 0; trial < 50; ++trial) {
      Rng rng = rng_for(18, trial);
      const Ket k = random_ket({2, 3}, rng);
      const std::vector<MatrixXc> us{random_unitary(2, rng), random_unitary(3, rng)};
      const Ket out = apply_local_unitaries(k, us);
      CHECK(std::abs(out.norm() - 1.0) < 1e-12);
      CHECK(std::abs(reduced_entropy(out.amplitudes(), 2, 3) -
                     reduced_entropy(k.amplitudes(), 2, 3)) < 1e-10);
    }
  }

  TEST_CASE("partial transpose of a product projector is positive") {
    Rng rng = rng_for(19, 0);
    const Ket p = tensor_product({random_ket({2}, rng), random_ket({2}, rng)});
    const HermitianOp pt = partial_transpose(projector(p), Cut::split({0}, 2));
    CHECK(pt.eigenvalues().minCoeff() > -1e-14);
  }
}
