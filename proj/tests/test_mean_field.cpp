#include <doctest.h>

#include <random>

#include "lcmf/mean_field.hpp"
#include "support/oracles.hpp"

using namespace lcmf;

namespace {

const QuadratureGrid& test_grid() {
  static const QuadratureGrid grid = build_grid(16, 16, 16);
  return grid;
}

const PotentialTables& test_tables() {
  static const PotentialTables tables = PotentialTables::build(test_grid());
  return tables;
}

// Generic admissible state: moments of a random aligning potential.
template <typename Rng>
MomentState random_state(Rng& rng) {
  std::uniform_real_distribution<double> strength(0.0, 8.0);
  const Vec3d u = random_unit_vector(rng), v = random_unit_vector(rng);
  const Eigen::VectorXd w = potential_on_grid(
      -strength(rng) * random_unit_vector(rng), -strength(rng) * (u * u.transpose()),
      -strength(rng) * (v * v.transpose()), test_tables());
  return compute_moments(density_from_potential(test_grid(), w), test_grid(), test_tables());
}

} // namespace

TEST_CASE("zero coefficients give a vanishing potential") {
  const KernelCoeffsd zero{};
  std::mt19937_64 rng(1);
  MomentState s;
  s.p = 0.3 * random_unit_vector(rng);
  const Eigen::VectorXd w = mean_field_potential(zero, s, test_tables());
  CHECK(w.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("isotropic potential is constant (c2 + c3 + 2 c4)/3") {
  const KernelCoeffsd k{0.8, -3.0, 1.5, 0.7};
  const MomentState iso = MomentState::isotropic();
  const Eigen::VectorXd w = mean_field_potential(k, iso, test_tables());
  const double expected = (k.c2 + k.c3 + 2.0 * k.c4) / 3.0;
  CHECK((w.array() - expected).abs().maxCoeff() <= 1e-14);
  std::mt19937_64 rng(2);
  CHECK(mean_field_potential(k, iso, random_rotation(rng)) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Maier-Saupe potential depends only on m11 squared") {
  const KernelCoeffsd k{0.0, -10.0, 0.0, 0.0};
  MomentState s;
  const double q = 0.7;
  s.q1 = Vec3d(q, (1.0 - q) / 2.0, (1.0 - q) / 2.0).asDiagonal();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 20; ++i) {
    const double alpha = std::acos(std::uniform_real_distribution<double>(-1, 1)(rng));
    const Mat3d p1 = euler_to_rotation(EulerAnglesd(alpha, angle(rng), angle(rng)));
    const Mat3d p2 = euler_to_rotation(EulerAnglesd(alpha, angle(rng), angle(rng)));
    CHECK(mean_field_potential(k, s, p1) ==
          doctest::Approx(mean_field_potential(k, s, p2)).epsilon(1e-13));
  }
}

TEST_CASE("grid potential matches the single-orientation form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  const KernelCoeffsd k{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
  const MomentState s = random_state(rng);
  const Eigen::VectorXd w = mean_field_potential(k, s, test_tables());
  for (Eigen::Index i : {Eigen::Index(0), Eigen::Index(777), test_grid().size() - 1}) {
    CHECK(w[i] == doctest::Approx(mean_field_potential(k, s, test_grid().rotations[size_t(i)]))
                      .epsilon(1e-13));
  }
}

TEST_CASE("boltzmann density for zero coefficients is uniform with Z = 1") {
  const KernelCoeffsd zero{};
  const DensityField f = boltzmann_density(zero, MomentState::isotropic(), test_grid());
  CHECK((f.values.array() - 1.0).abs().maxCoeff() <= 1e-14);
  CHECK(f.z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("boltzmann density is normalized for any state") {
  std::mt19937_64 rng(5);
  const KernelCoeffsd k{1.0, -8.0, -3.0, 1.0};
  for (int i = 0; i < 5; ++i) {
    const DensityField f = boltzmann_density(k, random_state(rng), test_grid(), test_tables());
    CHECK(integrate(test_grid(), f.values) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.values.minCoeff() >= 0.0);
  }
}

TEST_CASE("constant potentials give the uniform density regardless of level") {
  // Shift invariance: an isotropic state makes W constant, and the constant
  // drops out through the partition function.
  for (double c2 : {-40.0, 0.0, 25.0}) {
    const KernelCoeffsd k{0.0, c2, c2, 0.0};
    const DensityField f =
        boltzmann_density(k, MomentState::isotropic(), test_grid(), test_tables());
    CHECK((f.values.array() - 1.0).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("non-finite potentials raise a numerical-range error") {
  const double inf = std::numeric_limits<double>::infinity();
  const KernelCoeffsd huge{0.0, -inf, 0.0, 0.0};
  MomentState s;
  s.q1 = Vec3d(0.9, 0.05, 0.05).asDiagonal();
  CHECK_THROWS_AS(boltzmann_density(huge, s, test_grid(), test_tables()),
                  numerical_range_error);
}

TEST_CASE("moments of the uniform density match the Haar values") {
  const KernelCoeffsd zero{};
  const DensityField f = boltzmann_density(zero, MomentState::isotropic(), test_grid());
  const MomentState s = compute_moments(f, test_grid(), test_tables());
  CHECK(s.p.norm() <= 1e-12);
  CHECK((s.q1 - Mat3d::Identity() / 3.0).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((s.q2 - Mat3d::Identity() / 3.0).cwiseAbs().maxCoeff() <= 1e-12);
  // Cross-check <m1 m1> against brute-force sampling.
  const double mc = oracles::monte_carlo_so3(
      [](const Eigen::Matrix3d& r) { return r(0, 1) * r(0, 1); }, 200000, 404);
  CHECK(std::abs(mc - s.q1(1, 1)) <= 5.0 / std::sqrt(200000.0));
}

TEST_CASE("deep alignment saturates the second moments") {
  const KernelCoeffsd k{0.0, -50.0, -50.0, 0.0};
  MomentState aligned;
  aligned.q1 = Vec3d(0.9, 0.05, 0.05).asDiagonal();
  aligned.q2 = Vec3d(0.05, 0.9, 0.05).asDiagonal();
  const QuadratureGrid grid = build_grid(32, 32, 32);
  const PotentialTables tables = PotentialTables::build(grid);
  const DensityField f = boltzmann_density(k, aligned, grid, tables);
  const MomentState s = compute_moments(f, grid, tables);
  CHECK(s.q1(0, 0) > 0.9);
  CHECK(s.q2(1, 1) > 0.9);
  CHECK(satisfies_moment_invariants(s));
}

TEST_CASE("moment traces are one for any density") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    const MomentState s = random_state(rng);
    CHECK(s.q1.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.q2.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((s.q1 - s.q1.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(satisfies_moment_invariants(s));
  }
}

TEST_CASE("fixed point map leaves the isotropic state invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(-20.0, 20.0);
  for (int i = 0; i < 20; ++i) {
    const KernelCoeffsd k{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
    const MomentState out =
        fixed_point_map(k, MomentState::isotropic(), test_grid(), test_tables());
    CHECK(state_distance(out, MomentState::isotropic()) <= 1e-12);
  }
}

TEST_CASE("zero coefficients map any state to isotropic in one application") {
  std::mt19937_64 rng(8);
  const KernelCoeffsd zero{};
  MomentState s;
  s.p = 0.4 * random_unit_vector(rng);
  s.q1 = Vec3d(0.6, 0.3, 0.1).asDiagonal();
  s.q2 = Vec3d(0.2, 0.5, 0.3).asDiagonal();
  const MomentState out = fixed_point_map(zero, s, test_grid(), test_tables());
  CHECK(state_distance(out, MomentState::isotropic()) <= 1e-12);
}

TEST_CASE("the map preserves axisymmetry of Maier-Saupe states") {
  const KernelCoeffsd k{0.0, -9.0, 0.0, 0.0};
  MomentState s;
  s.q1 = Vec3d(0.62, 0.19, 0.19).asDiagonal();
  const MomentState out = fixed_point_map(k, s, test_grid(), test_tables());
  const Vec3d eig = sorted_eigenvalues(out.q1);
  CHECK(eig[1] - eig[0] <= 1e-12);
}

TEST_CASE("free energy vanishes for zero coefficients") {
  const KernelCoeffsd zero{};
  const DensityField f = boltzmann_density(zero, MomentState::isotropic(), test_grid());
  CHECK(std::abs(free_energy(zero, MomentState::isotropic(), f, test_grid())) <= 1e-13);
}

TEST_CASE("isotropic free energy is (c2 + c3 + 2 c4)/6") {
  const KernelCoeffsd k{1.2, -7.0, 3.0, -0.5};
  const DensityField f = boltzmann_density(k, MomentState::isotropic(), test_grid());
  const double expected = (k.c2 + k.c3 + 2.0 * k.c4) / 6.0;
  CHECK(free_energy(k, MomentState::isotropic(), f, test_grid()) ==
        doctest::Approx(expected).epsilon(1e-12));
}
