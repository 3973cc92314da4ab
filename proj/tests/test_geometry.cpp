#include <doctest.h>

#include "tangle/geometry.hpp"
#include "test_support.hpp"

using namespace tangle;
using namespace tangle::testing;

namespace {

FactorCurve real_qubit() { return FactorCurve(BlochCurve{Polynomial::affine(0, 1), {}}); }

FactorCurve random_hamiltonian_curve(int dim, Rng& rng) {
  return FactorCurve(LocalHamiltonianCurve(random_hermitian({dim}, rng), random_ket({dim}, rng)));
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("fs distance examples") {
    const Ket a = Ket::basis(2, 0), b = Ket::basis(2, 1);
    CHECK(fs_distance(a, a) == 0.0);
    CHECK(fs_distance(a, b) == doctest::Approx(2.0));
    for (double theta : {0.0, 0.5, 2.0})
      for (double delta : {1e-6, 0.01, 0.3, 1.0}) {
        const double d = fs_distance(Ket(bloch(theta)), Ket(bloch(theta + delta)));
        CHECK(d == doctest::Approx(2 * std::abs(std::sin(delta / 2))).epsilon(1e-12));
      }
    CHECK_THROWS_AS(fs_distance(a, Ket(ket2(1, 1))), ValidationError);
    CHECK_THROWS_AS(fs_distance(a, Ket::basis(3, 0)), ArgumentError);
  }

  TEST_CASE("fs distance is projective, symmetric and a metric") {
    for (int trial = 0; trial < 200; ++trial) {
      Rng rng = rng_for(41, trial);
      const Ket a = random_ket({3}, rng), b = random_ket({3}, rng), c = random_ket({3}, rng);
      const Ket ap(std::polar(1.0, uniform(rng, 0, 6)) * a.amplitudes());
      CHECK(fs_distance(a, ap) < 1e-14);
      CHECK(std::abs(fs_distance(a, b) - fs_distance(b, a)) < 1e-14);
      CHECK(fs_distance(a, c) <= fs_distance(a, b) + fs_distance(b, c) + 1e-12);
      // Overlap formula as an oracle.
      const double ov = std::abs(a.amplitudes().dot(b.amplitudes()));
      CHECK(std::abs(fs_distance(a, b) - 2 * std::sqrt(std::max(0.0, 1 - ov * ov))) < 1e-7);
    }
  }

  TEST_CASE("fs speed examples") {
    const TangentVector one = differentiate(real_qubit(), 0.4, DiffMethod::analytic());
    CHECK(fs_speed(one) == doctest::Approx(1.0).epsilon(1e-14));
    const ProductTrajectory two({real_qubit(), real_qubit()});
    CHECK(fs_speed(product_tangent(two, 1.2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    Rng rng = rng_for(42, 0);
    const FactorCurve phase(PhaseCurve{Polynomial::affine(0, 2.0), random_ket({3}, rng)});
    CHECK(fs_speed(differentiate(phase, 0.3)) < 1e-14);
  }

  TEST_CASE("fs speed is the limit of distance over step") {
    for (int trial = 0; trial < 20; ++trial) {
      Rng rng = rng_for(43, trial);
      const ProductTrajectory traj({random_hamiltonian_curve(2, rng), random_hamiltonian_curve(3, rng)});
      const double t = uniform(rng, -1, 1);
      const double v = fs_speed(product_tangent(traj, t));
      const auto err = [&](double h) {
        return std::abs(fs_distance(traj.state(t), traj.state(t + h)) / h - v);
      };
      CHECK(err(1e-3) / err(5e-4) == doctest::Approx(4.0).epsilon(0.2));
    }
  }

  TEST_CASE("fs speed is gauge invariant") {
    for (int trial = 0; trial < 20; ++trial) {
      Rng rng = rng_for(44, trial);
      const FactorCurve a = random_hamiltonian_curve(2, rng), b = random_hamiltonian_curve(2, rng);
      const Polynomial g({0.0, uniform(rng, -3, 3), uniform(rng, -1, 1)});
      const double t = uniform(rng, -1, 1);
      CHECK(std::abs(fs_speed(product_tangent(ProductTrajectory({a, b}), t)) -
                     fs_speed(product_tangent(ProductTrajectory({a, b.with_phase(g)}), t))) < 1e-12);
    }
  }

  TEST_CASE("profile of the two-qubit demo") {
    const ProductTrajectory traj({real_qubit(), real_qubit()});
    std::vector<double> grid;
    for (int i = 0; i < 181; ++i) grid.push_back(kPi * i / 180);
    const Profile p = profile(traj, grid, {Cut::split({0}, 2)}, {DiffMethod::analytic()});
    REQUIRE(p.samples.size() == 181);
    for (const auto& s : p.samples) {
      CHECK(s.fs_speed == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
      CHECK(s.tangent_entropy[0] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(s.base_entropy[0] < 1e-12);
    }
    CHECK(p.arc_length == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-12));
  }

  TEST_CASE("single moving factor gives product tangents") {
    Rng rng = rng_for(45, 0);
    const ProductTrajectory traj(
        {random_hamiltonian_curve(2, rng), random_hamiltonian_curve(3, rng), random_hamiltonian_curve(2, rng)},
        {true, false, true});
    const std::vector<Cut> cuts{Cut::split({1}, 3)};
    const Profile p = profile(traj, {0.0, 0.3, 0.6}, cuts);
    for (const auto& s : p.samples) CHECK(s.tangent_entropy[0] < 1e-12);
  }

  TEST_CASE("stationary tangents report zero entropy") {
    Rng rng = rng_for(46, 0);
    const ProductTrajectory traj({FactorCurve(PhaseCurve{Polynomial::affine(0, 1), random_ket({2}, rng)}),
                                  FactorCurve(PhaseCurve{Polynomial::affine(0, 2), random_ket({2}, rng)})});
    const Profile p = profile(traj, {0.0, 1.0}, {Cut::split({0}, 2)});
    for (const auto& s : p.samples) {
      CHECK(s.fs_speed < 1e-12);
      CHECK(s.tangent_entropy[0] == 0.0);
    }
    CHECK(p.arc_length < 1e-12);
  }

  TEST_CASE("register profile uses the global parameter") {
    const auto rot = [](int axis, double rate) {
      return UnitaryCurve::rotation(axis, Polynomial::affine(0, rate));
    };
    const RegisterProgram prog(2, {{rot(1, 1.0), rot(2, 0.5)}, {rot(0, 0.7), rot(1, 1.2)}},
                               uniform_superposition(2), 0.5);
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    const Profile p = profile(prog, grid, {Cut::split({0}, 2)});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto [k, t] = prog.locate(grid[i]);
      CHECK(p.samples[i].fs_speed == doctest::Approx(fs_speed(register_tangent(prog, k, t))));
      CHECK(p.samples[i].base_entropy[0] < 1e-12);
    }
  }

  TEST_CASE("raw and horizontal tangents differ only under a gauge") {
    const ProductTrajectory traj({real_qubit().with_phase(Polynomial::affine(0, 3.0)), real_qubit()});
    const std::vector<Cut> cuts{Cut::split({0}, 2)};
    const Profile h = profile(traj, {0.7}, cuts);
    ProfileOptions raw;
    raw.horizontal = false;
    const Profile r = profile(traj, {0.7}, cuts, raw);
    CHECK(h.samples[0].tangent_entropy[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.samples[0].tangent_entropy[0] < 0.99);
  }
}
