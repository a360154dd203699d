#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include <liespec/io.hpp>
#include <liespec/lie_algebra.hpp>

namespace {

using liespec::LieAlgebra;
using liespec::Subspace;
using liespec::su2;

// Independent oracle: the defining 2x2 anti-Hermitian matrices of the frame.
// All bracket facts are checked against literal matrix commutators here,
// never against the structure-constant table under test.
Eigen::Matrix2cd frame_matrix(int i) {
  const std::complex<double> I(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (i) {
    case 0: m << I, 0.0, 0.0, -I; break;
    case 1: m << 0.0, 1.0, -1.0, 0.0; break;
    default: m << 0.0, I, I, 0.0; break;
  }
  return m;
}

Eigen::Matrix2cd commutator(const Eigen::Matrix2cd& a,
                            const Eigen::Matrix2cd& b) {
  return a * b - b * a;
}

Eigen::VectorXd random_vec(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(3);
  v << u(rng), u(rng), u(rng);
  return v;
}

bool same_subspace(const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && a.contains(b) && b.contains(a);
}

}  // namespace

TEST_CASE("structure constants reproduce the matrix commutators",
          "[liealg]") {
  const LieAlgebra& alg = su2();
  REQUIRE(alg.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix2cd lhs = commutator(frame_matrix(i), frame_matrix(j));
      Eigen::Matrix2cd rhs = Eigen::Matrix2cd::Zero();
      for (int k = 0; k < 3; ++k)
        rhs += alg.structure_constant(i, j, k) * frame_matrix(k);
      REQUIRE((lhs - rhs).norm() < 1e-14);
    }
  // Cyclic table, coefficient two.
  REQUIRE(alg.structure_constant(0, 1, 2) == 2.0);
  REQUIRE(alg.structure_constant(1, 2, 0) == 2.0);
  REQUIRE(alg.structure_constant(2, 0, 1) == 2.0);
  REQUIRE(alg.structure_constant(1, 0, 2) == -2.0);
  REQUIRE(alg.structure_constant(0, 0, 1) == 0.0);
  REQUIRE(alg.structure_constant(0, 1, 0) == 0.0);
}

TEST_CASE("jacobi defect is negligible", "[liealg]") {
  REQUIRE(su2().jacobi_defect() <= 1e-12);
}

TEST_CASE("bracket is bilinear and antisymmetric", "[liealg]") {
  const LieAlgebra& alg = su2();
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = random_vec(rng), y = random_vec(rng),
                    z = random_vec(rng);
    const double a = 0.37, b = -1.9;
    REQUIRE((alg.bracket(x, y) + alg.bracket(y, x)).norm() < 1e-13);
    REQUIRE((alg.bracket(a * x + b * z, y) - a * alg.bracket(x, y) -
             b * alg.bracket(z, y))
                .norm() < 1e-12);
    REQUIRE((alg.ad(x) * y - alg.bracket(x, y)).norm() < 1e-13);
  }
}

TEST_CASE("killing form matches four times the defining trace form",
          "[liealg]") {
  const liespec::BilinearForm b = liespec::killing_form(su2());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double oracle =
          4.0 * (frame_matrix(i) * frame_matrix(j)).trace().real();
      REQUIRE(b.matrix(i, j) == Catch::Approx(oracle).margin(1e-12));
    }
  REQUIRE(b.is_negative_definite());
  REQUIRE(b.is_nondegenerate());
  REQUIRE(b.eigenvalues().maxCoeff() < 0.0);
  REQUIRE(b.matrix.isApprox(-8.0 * Eigen::Matrix3d::Identity(), 1e-13));
}

TEST_CASE("killing form is invariant under the adjoint action", "[liealg]") {
  const LieAlgebra& alg = su2();
  const liespec::BilinearForm b = liespec::killing_form(alg);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = random_vec(rng), y = random_vec(rng),
                    z = random_vec(rng);
    const double lhs = alg.bracket(z, x).dot(b.matrix * y);
    const double rhs = -x.dot(b.matrix * alg.bracket(z, y));
    REQUIRE(lhs == Catch::Approx(rhs).margin(1e-10));
  }
}

TEST_CASE("orthogonal complement splits the algebra", "[liealg]") {
  const LieAlgebra& alg = su2();
  const liespec::BilinearForm b = liespec::killing_form(alg);
  Eigen::MatrixXd axis(3, 1);
  axis << 1, 0, 0;
  const Subspace k = Subspace::span(axis);
  const Subspace p = liespec::orthogonal_complement(alg, k, b);
  REQUIRE(p.dim() == 2);
  for (int i = 0; i < k.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j)
      REQUIRE(std::abs(k.basis().col(i).dot(b.matrix * p.basis().col(j))) <
              1e-12);
  REQUIRE(liespec::orthogonal_complement(alg, Subspace::zero(3), b).dim() ==
          3);
  REQUIRE(liespec::orthogonal_complement(alg, Subspace::full(3), b).dim() ==
          0);
  // The complement of a subalgebra is invariant under its adjoint action.
  REQUIRE(liespec::is_ad_invariant(alg, k, p));
}

TEST_CASE("degenerate pairing is rejected for complements", "[liealg]") {
  const LieAlgebra& alg = su2();
  liespec::BilinearForm b = liespec::killing_form(alg);
  b.matrix.setZero();
  b.matrix(0, 0) = 1.0;  // rank one: kernel meets any 2-dim subspace
  Eigen::MatrixXd axis(3, 1);
  axis << 0, 1, 0;
  REQUIRE_THROWS_AS(
      liespec::orthogonal_complement(alg, Subspace::span(axis), b),
      std::invalid_argument);
}

TEST_CASE("horizontal plane closes to the full algebra in one step",
          "[liealg]") {
  const LieAlgebra& alg = su2();
  Eigen::MatrixXd plane(3, 2);
  plane << 0, 0, 1, 0, 0, 1;
  const Subspace p = Subspace::span(plane);

  // One closure step by hand: the plane plus first brackets already spans.
  std::vector<Eigen::VectorXd> gens;
  gens.push_back(p.basis().col(0));
  gens.push_back(p.basis().col(1));
  gens.push_back(alg.bracket(p.basis().col(0), p.basis().col(1)));
  REQUIRE(Subspace::span(3, gens).dim() == 3);

  const Subspace closure = liespec::generated_subalgebra(alg, p);
  REQUIRE(closure.dim() == 3);
  REQUIRE(liespec::is_bracket_generating(alg, p));
  REQUIRE(liespec::is_ideal(alg, closure));
}

TEST_CASE("a single axis does not generate", "[liealg]") {
  const LieAlgebra& alg = su2();
  Eigen::MatrixXd axis(3, 1);
  axis << 1, 0, 0;
  const Subspace k = Subspace::span(axis);
  const Subspace closure = liespec::generated_subalgebra(alg, k);
  REQUIRE(closure.dim() == 1);
  REQUIRE_FALSE(liespec::is_bracket_generating(alg, k));
  REQUIRE(same_subspace(closure, k));
  // A line is closed under its own (zero) bracket but is not an ideal.
  REQUIRE(liespec::is_subalgebra(alg, k));
  REQUIRE_FALSE(liespec::is_ideal(alg, k));
}

TEST_CASE("generated subalgebra is idempotent and monotone", "[liealg]") {
  const LieAlgebra& alg = su2();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd m(3, 1);
    m.col(0) = random_vec(rng);
    const Subspace p = Subspace::span(m);
    const Subspace q =
        Subspace::span(3, {m.col(0), random_vec(rng)});
    const Subspace gp = liespec::generated_subalgebra(alg, p);
    const Subspace gq = liespec::generated_subalgebra(alg, q);
    REQUIRE(same_subspace(liespec::generated_subalgebra(alg, gp), gp));
    REQUIRE(gq.contains(gp));  // monotone: p inside q
    REQUIRE(liespec::is_subalgebra(alg, gp));
  }
}

TEST_CASE("every plane generates by simplicity", "[liealg]") {
  const LieAlgebra& alg = su2();
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd m(3, 2);
    m.col(0) = random_vec(rng);
    m.col(1) = random_vec(rng);
    const Subspace p = Subspace::span(m);
    if (p.dim() < 2) continue;  // degenerate draw
    REQUIRE(liespec::is_bracket_generating(alg, p));
  }
}

TEST_CASE("trivial subspaces behave at the boundary", "[liealg]") {
  const LieAlgebra& alg = su2();
  const Subspace zero = Subspace::zero(3);
  const Subspace full = Subspace::full(3);
  REQUIRE(liespec::generated_subalgebra(alg, zero).dim() == 0);
  REQUIRE(same_subspace(liespec::generated_subalgebra(alg, full), full));
  REQUIRE(liespec::is_ideal(alg, zero));
  REQUIRE(liespec::is_ideal(alg, full));
  REQUIRE(liespec::is_subalgebra(alg, zero));
  REQUIRE(liespec::is_subalgebra(alg, full));
  REQUIRE_FALSE(liespec::is_bracket_generating(alg, zero));
}

TEST_CASE("json import reconstructs the algebra", "[liealg][io]") {
  const std::string text = R"({
    "dim": 3,
    "brackets": [[0, 1, [0, 0, 2]], [1, 2, [2, 0, 0]], [2, 0, [0, 2, 0]]]
  })";
  const LieAlgebra alg = liespec::lie_algebra_from_json_string(text);
  const LieAlgebra& ref = su2();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        REQUIRE(alg.structure_constant(i, j, k) ==
                ref.structure_constant(i, j, k));
}

TEST_CASE("json import rejects malformed tables", "[liealg][io]") {
  using liespec::lie_algebra_from_json_string;
  // Not JSON at all.
  REQUIRE_THROWS_AS(lie_algebra_from_json_string("{nope"),
                    std::invalid_argument);
  // Missing dim.
  REQUIRE_THROWS_AS(lie_algebra_from_json_string(R"({"brackets": []})"),
                    std::invalid_argument);
  // Index out of range.
  REQUIRE_THROWS_AS(lie_algebra_from_json_string(
                        R"({"dim": 2, "brackets": [[0, 2, [0, 1]]]})"),
                    std::invalid_argument);
  // Duplicate unordered pair.
  REQUIRE_THROWS_AS(
      lie_algebra_from_json_string(
          R"({"dim": 3, "brackets": [[0, 1, [0, 0, 1]], [1, 0, [0, 0, 1]]]})"),
      std::invalid_argument);
  // Coefficient list of the wrong length.
  REQUIRE_THROWS_AS(lie_algebra_from_json_string(
                        R"({"dim": 3, "brackets": [[0, 1, [0, 0]]]})"),
                    std::invalid_argument);
  // A table that breaks the Jacobi identity.
  REQUIRE_THROWS_AS(
      lie_algebra_from_json_string(
          R"({"dim": 3, "brackets":
              [[0, 1, [0, 0, 1]], [1, 2, [1, 0, 0]], [2, 0, [1, 0, 0]]]})"),
      std::invalid_argument);
}

TEST_CASE("constructor validates shape and antisymmetry", "[liealg]") {
  // Wrong number of tables.
  std::vector<Eigen::MatrixXd> two(2, Eigen::MatrixXd::Zero(3, 3));
  REQUIRE_THROWS_AS(LieAlgebra(two), std::invalid_argument);
  // Non-antisymmetric table.
  std::vector<Eigen::MatrixXd> tables(3, Eigen::MatrixXd::Zero(3, 3));
  tables[0](1, 2) = 1.0;
  tables[0](2, 1) = 1.0;
  REQUIRE_THROWS_AS(LieAlgebra(tables), std::invalid_argument);
  // The abelian algebra is fine.
  std::vector<Eigen::MatrixXd> zero(3, Eigen::MatrixXd::Zero(3, 3));
  REQUIRE_NOTHROW(LieAlgebra(zero));
}
