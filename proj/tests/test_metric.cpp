#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <stdexcept>

#include <liespec/io.hpp>
#include <liespec/lie_algebra.hpp>
#include <liespec/metric.hpp>

namespace {
using liespec::Metric;
using liespec::Subspace;
using liespec::su2;
}  // namespace

TEST_CASE("diagonal frame metric stores squared lengths", "[metric]") {
  const Metric g = liespec::milnor_metric(2.0, 0.5, 1.0);
  Eigen::Matrix3d expect = Eigen::Vector3d(4.0, 0.25, 1.0).asDiagonal();
  REQUIRE(g.gram().isApprox(expect, 1e-15));
  REQUIRE(g.inverse().isApprox(expect.inverse(), 1e-15));
  REQUIRE(g.eig_min() == Catch::Approx(0.25).margin(1e-14));
  REQUIRE(g.eig_max() == Catch::Approx(4.0).margin(1e-14));
  REQUIRE(g.dim() == 3);
}

TEST_CASE("unit frame metric is minus one eighth of the killing form",
          "[metric]") {
  const Metric g = liespec::milnor_metric(1, 1, 1);
  const Eigen::MatrixXd b = liespec::killing_form(su2()).matrix;
  REQUIRE(g.gram().isApprox(-b / 8.0, 1e-14));
}

TEST_CASE("fiber-scaled family matches its diagonal form", "[metric]") {
  const Metric g = liespec::berger_metric(1.75, 2.5);
  Eigen::Matrix3d expect = Eigen::Vector3d(2.5, 1.75, 1.75).asDiagonal();
  REQUIRE(g.gram().isApprox(expect, 1e-14));
  REQUIRE_THROWS_AS(liespec::berger_metric(0.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(liespec::berger_metric(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("scaling acts on the gram and inversely on the cometric",
          "[metric]") {
  const Metric g = liespec::milnor_metric(1.3, 0.8, 2.2);
  const Metric s = liespec::scale_metric(g, 4.0);
  REQUIRE(s.gram().isApprox(4.0 * g.gram(), 1e-15));
  REQUIRE(s.inverse().isApprox(g.inverse() / 4.0, 1e-15));
  REQUIRE(s.eig_max() == Catch::Approx(4.0 * g.eig_max()).epsilon(1e-13));
  REQUIRE_THROWS_AS(liespec::scale_metric(g, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(liespec::scale_metric(g, -1.0), std::invalid_argument);
}

TEST_CASE("metric constructor rejects bad grams", "[metric]") {
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  REQUIRE_THROWS_AS(Metric(rect), std::invalid_argument);

  Eigen::Matrix3d asym = Eigen::Matrix3d::Identity();
  asym(0, 1) = 0.5;  // far beyond the symmetry tolerance
  REQUIRE_THROWS_AS(Metric(asym), std::invalid_argument);

  Eigen::Matrix3d degenerate = Eigen::Vector3d(1, 1, 0).asDiagonal();
  REQUIRE_THROWS_AS(Metric(degenerate), std::invalid_argument);
  Eigen::Matrix3d indefinite = Eigen::Vector3d(1, 1, -1).asDiagonal();
  REQUIRE_THROWS_AS(Metric(indefinite), std::invalid_argument);

  // Roundoff-level asymmetry is symmetrized instead of rejected.
  Eigen::Matrix3d nearly = Eigen::Matrix3d::Identity();
  nearly(0, 1) = 1e-14;
  const Metric ok(nearly);
  REQUIRE(ok.gram().isApprox(ok.gram().transpose(), 0.0));

  REQUIRE_THROWS_AS(liespec::milnor_metric(0.0, 1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(liespec::milnor_metric(1, -2, 1), std::invalid_argument);
}

TEST_CASE("reductive metric from a fiber inner product and plane scale",
          "[metric]") {
  const liespec::LieAlgebra& alg = su2();
  Eigen::MatrixXd axis(3, 1);
  axis << 1, 0, 0;
  const Subspace k = Subspace::span(axis);

  // Fiber gram beta on the (unit) axis, plane weight alpha via the pairing:
  // the plane block of minus the killing form is 8 * identity, so alpha/8
  // recovers the diagonal family exactly.
  const double alpha = 1.75, beta = 2.5;
  Eigen::MatrixXd h(1, 1);
  h << beta;
  const Metric g = liespec::nr_metric(alg, k, h, alpha / 8.0);
  REQUIRE(g.gram().isApprox(
      Eigen::MatrixXd(Eigen::Vector3d(beta, alpha, alpha).asDiagonal()),
      1e-12));

  // Empty fiber: the metric is the scaled bi-invariant one.
  const Metric bi =
      liespec::nr_metric(alg, Subspace::zero(3), Eigen::MatrixXd(0, 0), 1.0);
  REQUIRE(bi.gram().isApprox(8.0 * Eigen::Matrix3d::Identity(), 1e-12));

  // The subspace must be a subalgebra.
  Eigen::MatrixXd plane(3, 2);
  plane << 0, 0, 1, 0, 0, 1;
  REQUIRE_THROWS_AS(
      liespec::nr_metric(alg, Subspace::span(plane), Eigen::MatrixXd(2, 2),
                         1.0),
      std::invalid_argument);
  // Fiber gram shape and positivity are enforced.
  REQUIRE_THROWS_AS(liespec::nr_metric(alg, k, Eigen::MatrixXd(2, 2), 1.0),
                    std::invalid_argument);
  Eigen::MatrixXd hbad(1, 1);
  hbad << -1.0;
  REQUIRE_THROWS_AS(liespec::nr_metric(alg, k, hbad, 1.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(liespec::nr_metric(alg, k, h, 0.0),
                    std::invalid_argument);
}

TEST_CASE("reductive pairing identity holds for the axisymmetric split",
          "[metric]") {
  const liespec::LieAlgebra& alg = su2();
  Eigen::MatrixXd axis(3, 1);
  axis << 1, 0, 0;
  const Subspace k = Subspace::span(axis);
  Eigen::MatrixXd plane(3, 2);
  plane << 0, 0, 1, 0, 0, 1;
  const Subspace p = Subspace::span(plane);

  Eigen::MatrixXd isotropic = 1.75 * Eigen::MatrixXd::Identity(2, 2);
  REQUIRE(liespec::is_naturally_reductive_split(alg, k, p, isotropic));

  // Unequal plane weights break the identity:
  // <[Z,X],Y> + <X,[Z,Y]> = 2 g33 - 2 g22 for Z, X, Y = axis, e2, e3.
  Eigen::MatrixXd lopsided(2, 2);
  lopsided << 4.0, 0.0, 0.0, 1.0;
  REQUIRE_FALSE(liespec::is_naturally_reductive_split(alg, k, p, lopsided));

  // Complementarity is required.
  REQUIRE_THROWS_AS(
      liespec::is_naturally_reductive_split(alg, k, k, Eigen::MatrixXd(1, 1)),
      std::invalid_argument);
}

TEST_CASE("fiber inner products invariant under the fiber group", "[metric]") {
  const liespec::LieAlgebra& alg = su2();
  Eigen::MatrixXd axis(3, 1);
  axis << 1, 0, 0;
  const Subspace k = Subspace::span(axis);
  // One-dimensional fibers act trivially on themselves.
  Eigen::MatrixXd h(1, 1);
  h << 3.7;
  REQUIRE(liespec::is_bi_invariant_on(alg, k, h));
  // On the full algebra the killing form qualifies and a generic one fails.
  const Eigen::MatrixXd b = -liespec::killing_form(alg).matrix;
  REQUIRE(liespec::is_bi_invariant_on(alg, Subspace::full(3), b));
  Eigen::MatrixXd skew = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  REQUIRE_FALSE(liespec::is_bi_invariant_on(alg, Subspace::full(3), skew));
}

TEST_CASE("metric json import round trips", "[metric][io]") {
  const std::string text = R"({"gram": [[4, 0, 0], [0, 1, 0], [0, 0, 1]]})";
  const Metric g = liespec::metric_from_json_string(text);
  REQUIRE(g.gram().isApprox(liespec::milnor_metric(2, 1, 1).gram(), 1e-15));
  REQUIRE_THROWS_AS(liespec::metric_from_json_string("[1,2]"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(liespec::metric_from_json_string(R"({"gram": [[1, 0]]})"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      liespec::metric_from_json_string(R"({"gram": [[1, 2], [3, 1]]})"),
      std::invalid_argument);
  REQUIRE_THROWS_AS(liespec::metric_from_json_string("not json"),
                    std::invalid_argument);
}
