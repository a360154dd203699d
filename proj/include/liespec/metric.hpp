#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

#include "liespec/lie_algebra.hpp"

namespace liespec {

/// Left-invariant metric on the group, stored as its Gram matrix on the
/// algebra basis (the inner product at the identity). Symmetric positive
/// definite, validated at construction.
class Metric {
 public:
  explicit Metric(Eigen::MatrixXd gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols())
      throw std::invalid_argument("Metric: gram matrix must be square");
    const double scale = gram_.lpNorm<Eigen::Infinity>();
    if ((gram_ - gram_.transpose()).lpNorm<Eigen::Infinity>() >
        1e-12 * std::max(scale, 1e-300))
      throw std::invalid_argument("Metric: gram matrix must be symmetric");
    gram_ = 0.5 * (gram_ + gram_.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_,
                                                      Eigen::EigenvaluesOnly);
    eig_min_ = es.eigenvalues().minCoeff();
    eig_max_ = es.eigenvalues().maxCoeff();
    if (eig_min_ <= 1e-12 * std::max(eig_max_, 1e-300))
      throw std::invalid_argument("Metric: gram matrix must be positive definite");
    inverse_ = gram_.inverse();
    inverse_ = 0.5 * (inverse_ + inverse_.transpose().eval());
  }

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double eig_min() const { return eig_min_; }
  double eig_max() const { return eig_max_; }

 private:
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd inverse_;
  double eig_min_ = 0.0;
  double eig_max_ = 0.0;
};

/// Diagonal metric diag(a1^2, a2^2, a3^2) in the Milnor frame.
inline Metric milnor_metric(double a1, double a2, double a3) {
  if (!(a1 > 0.0) || !(a2 > 0.0) || !(a3 > 0.0))
    throw std::invalid_argument("milnor_metric: parameters must be positive");
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 0) = a1 * a1;
  g(1, 1) = a2 * a2;
  g(2, 2) = a3 * a3;
  return Metric(g);
}

/// Berger-sphere metric: beta on the fiber direction X1, alpha on the
/// complement. Equals milnor_metric(sqrt(beta), sqrt(alpha), sqrt(alpha)).
inline Metric berger_metric(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("berger_metric: parameters must be positive");
  return milnor_metric(std::sqrt(beta), std::sqrt(alpha), std::sqrt(alpha));
}

inline Metric scale_metric(const Metric& g, double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("scale_metric: scale must be positive");
  return Metric(c * g.gram());
}

/// Naturally reductive construction: g restricted to the subalgebra k is h,
/// g on the Killing-orthogonal complement p is alpha * (-B), and the blocks
/// are g-orthogonal. h may be any inner product on k.
inline Metric nr_metric(const LieAlgebra& alg, const Subspace& k,
                        const Eigen::MatrixXd& h_gram, double alpha) {
  const int n = alg.dim();
  if (k.parent_dim() != n)
    throw std::invalid_argument("nr_metric: subspace dimension mismatch");
  if (!(alpha > 0.0))
    throw std::invalid_argument("nr_metric: alpha must be positive");
  if (!is_subalgebra(alg, k))
    throw std::invalid_argument("nr_metric: k is not a subalgebra");
  const int dk = k.dim();
  if (h_gram.rows() != dk || h_gram.cols() != dk)
    throw std::invalid_argument("nr_metric: h gram shape mismatch");
  if (dk > 0) {
    if ((h_gram - h_gram.transpose()).lpNorm<Eigen::Infinity>() >
        1e-12 * std::max(h_gram.lpNorm<Eigen::Infinity>(), 1e-300))
      throw std::invalid_argument("nr_metric: h must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_gram,
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("nr_metric: h must be positive definite");
  }

  const BilinearForm b = killing_form(alg);
  const Subspace p = orthogonal_complement(alg, k, b);
  if (dk + p.dim() != n)
    throw std::invalid_argument("nr_metric: split does not fill the algebra");

  // Basis-change T maps (k, p) coordinates to algebra coordinates.
  Eigen::MatrixXd t(n, n);
  t.leftCols(dk) = k.basis();
  t.rightCols(p.dim()) = p.basis();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  block.topLeftCorner(dk, dk) = h_gram;
  block.bottomRightCorner(p.dim(), p.dim()) =
      alpha * (p.basis().transpose() * (-b.matrix) * p.basis());
  Eigen::MatrixXd t_inv = t.inverse();
  Eigen::MatrixXd gram = t_inv.transpose() * block * t_inv;
  return Metric(0.5 * (gram + gram.transpose().eval()));
}

/// Natural-reductivity identity for the split alg = k + p with the given
/// inner product on p:  <[Z,X]_p, Y> + <X, [Z,Y]_p> = 0 for all basis
/// Z in alg and X, Y in p, where _p projects along k.
inline bool is_naturally_reductive_split(const LieAlgebra& alg,
                                         const Subspace& k, const Subspace& p,
                                         const Eigen::MatrixXd& inner,
                                         double tol = kSubspaceTol) {
  const int n = alg.dim();
  if (k.parent_dim() != n || p.parent_dim() != n)
    throw std::invalid_argument(
        "is_naturally_reductive_split: dimension mismatch");
  if (k.dim() + p.dim() != n)
    throw std::invalid_argument(
        "is_naturally_reductive_split: k and p are not complementary");
  const int dp = p.dim();
  if (inner.rows() != dp || inner.cols() != dp)
    throw std::invalid_argument(
        "is_naturally_reductive_split: inner gram shape mismatch");
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (inner + inner.transpose()), Eigen::EigenvaluesOnly);
    if (dp > 0 && es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument(
          "is_naturally_reductive_split: inner product not positive definite");
  }

  Eigen::MatrixXd t(n, n);
  t.leftCols(k.dim()) = k.basis();
  t.rightCols(dp) = p.basis();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
  if (!lu.isInvertible())
    throw std::invalid_argument(
        "is_naturally_reductive_split: k and p are not complementary");
  Eigen::MatrixXd t_inv = lu.inverse();

  // p-coordinates of the projection along k.
  auto p_part = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return (t_inv * v).tail(dp);
  };

  for (int zi = 0; zi < n; ++zi) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    z(zi) = 1.0;
    for (int xi = 0; xi < dp; ++xi) {
      Eigen::VectorXd zx_p = p_part(alg.bracket(z, p.basis().col(xi)));
      for (int yi = 0; yi < dp; ++yi) {
        Eigen::VectorXd zy_p = p_part(alg.bracket(z, p.basis().col(yi)));
        const double lhs = zx_p.dot(inner.col(yi)) + inner.row(xi).dot(zy_p);
        if (std::abs(lhs) > tol) return false;
      }
    }
  }
  return true;
}

/// Infinitesimal bi-invariance of h on the subalgebra k:
/// h([z,x], y) + h(x, [z,y]) = 0 for z, x, y in k.
inline bool is_bi_invariant_on(const LieAlgebra& alg, const Subspace& k,
                               const Eigen::MatrixXd& h_gram,
                               double tol = kSubspaceTol) {
  const int dk = k.dim();
  if (k.parent_dim() != alg.dim())
    throw std::invalid_argument("is_bi_invariant_on: dimension mismatch");
  if (h_gram.rows() != dk || h_gram.cols() != dk)
    throw std::invalid_argument("is_bi_invariant_on: h gram shape mismatch");
  if (!is_subalgebra(alg, k))
    throw std::invalid_argument("is_bi_invariant_on: k is not a subalgebra");
  for (int zi = 0; zi < dk; ++zi)
    for (int xi = 0; xi < dk; ++xi) {
      Eigen::VectorXd zx =
          k.coords(alg.bracket(k.basis().col(zi), k.basis().col(xi)));
      for (int yi = 0; yi < dk; ++yi) {
        Eigen::VectorXd zy =
            k.coords(alg.bracket(k.basis().col(zi), k.basis().col(yi)));
        const double lhs = zx.dot(h_gram.col(yi)) + h_gram.row(xi).dot(zy);
        if (std::abs(lhs) > tol) return false;
      }
    }
  return true;
}

}  // namespace liespec
