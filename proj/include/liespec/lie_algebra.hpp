#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace liespec {

inline constexpr double kJacobiTol = 1e-12;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kSubspaceTol = 1e-10;

/// Symmetric bilinear form on the algebra, stored as its matrix in the fixed
/// basis.
struct BilinearForm {
  Eigen::MatrixXd matrix;

  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix,
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  bool is_negative_definite() const { return eigenvalues().maxCoeff() < 0.0; }

  bool is_nondegenerate(double rel_tol = kRankTol) const {
    Eigen::VectorXd ev = eigenvalues().cwiseAbs();
    return ev.minCoeff() > rel_tol * std::max(ev.maxCoeff(), 1e-300);
  }
};

/// Linear subspace of R^parent_dim, stored with an orthonormalized basis
/// (standard dot product) to stabilize projections. Generators that are
/// linearly dependent are reduced; rank decisions use singular values with
/// relative tolerance kRankTol.
class Subspace {
 public:
  static Subspace zero(int parent_dim) {
    return Subspace(Eigen::MatrixXd::Zero(parent_dim, 0), parent_dim);
  }

  static Subspace full(int parent_dim) {
    return Subspace(Eigen::MatrixXd::Identity(parent_dim, parent_dim),
                    parent_dim);
  }

  /// Span of the columns of `generators`.
  static Subspace span(const Eigen::MatrixXd& generators) {
    const int n = static_cast<int>(generators.rows());
    if (generators.cols() == 0) return zero(n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(generators, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = kRankTol * std::max(sv(0), 1e-300);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return Subspace(svd.matrixU().leftCols(rank), n);
  }

  static Subspace span(int parent_dim,
                       const std::vector<Eigen::VectorXd>& generators) {
    Eigen::MatrixXd m(parent_dim, static_cast<int>(generators.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (generators[j].size() != parent_dim)
        throw std::invalid_argument("Subspace::span: generator size mismatch");
      m.col(j) = generators[j];
    }
    return span(m);
  }

  int parent_dim() const { return parent_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }

  /// Orthonormal basis, one column per basis vector.
  const Eigen::MatrixXd& basis() const { return basis_; }

  Eigen::VectorXd project(const Eigen::VectorXd& v) const {
    return basis_ * (basis_.transpose() * v);
  }

  /// Coordinates of v in the stored basis (meaningful when v lies in the span).
  Eigen::VectorXd coords(const Eigen::VectorXd& v) const {
    return basis_.transpose() * v;
  }

  bool contains(const Eigen::VectorXd& v, double tol = kSubspaceTol) const {
    return (v - project(v)).lpNorm<Eigen::Infinity>() <= tol;
  }

  bool contains(const Subspace& other, double tol = kSubspaceTol) const {
    for (int j = 0; j < other.dim(); ++j)
      if (!contains(other.basis_.col(j), tol)) return false;
    return true;
  }

 private:
  Subspace(Eigen::MatrixXd basis, int parent_dim)
      : basis_(std::move(basis)), parent_dim_(parent_dim) {}

  Eigen::MatrixXd basis_;
  int parent_dim_;
};

/// Finite-dimensional real Lie algebra given by structure constants over a
/// fixed basis: [X_i, X_j] = sum_k c(i,j,k) X_k.
///
/// Antisymmetry and the Jacobi identity are validated at construction.
class LieAlgebra {
 public:
  /// `tables[k](i,j) = c(i,j,k)`, one dim x dim matrix per output component.
  explicit LieAlgebra(std::vector<Eigen::MatrixXd> tables)
      : dim_(static_cast<int>(tables.size())), tables_(std::move(tables)) {
    for (const auto& t : tables_) {
      if (t.rows() != dim_ || t.cols() != dim_)
        throw std::invalid_argument("LieAlgebra: table shape mismatch");
      if ((t + t.transpose()).lpNorm<Eigen::Infinity>() > kJacobiTol)
        throw std::invalid_argument(
            "LieAlgebra: structure constants are not antisymmetric");
    }
    // ad(X_i)(k, j) = c(i, j, k)
    ad_.reserve(dim_);
    for (int i = 0; i < dim_; ++i) {
      Eigen::MatrixXd a(dim_, dim_);
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) a(k, j) = tables_[k](i, j);
      ad_.push_back(std::move(a));
    }
    if (jacobi_defect() > kJacobiTol)
      throw std::invalid_argument(
          "LieAlgebra: structure constants violate the Jacobi identity");
  }

  int dim() const { return dim_; }

  double structure_constant(int i, int j, int k) const {
    return tables_[k](i, j);
  }

  /// Matrix of ad(X_i) in the fixed basis.
  const Eigen::MatrixXd& ad_basis(int i) const { return ad_[i]; }

  /// Matrix of ad(x) for an arbitrary element.
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const {
    check_dim(x);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i) a += x(i) * ad_[i];
    return a;
  }

  /// [x, y] via the structure constants. Bilinear, antisymmetric.
  Eigen::VectorXd bracket(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) const {
    check_dim(x);
    check_dim(y);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < dim_; ++i)
      if (x(i) != 0.0) out += x(i) * (ad_[i] * y);
    return out;
  }

  /// Max-abs defect of [[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]
  /// over unordered triples (enough, given exact antisymmetry).
  double jacobi_defect() const {
    double defect = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k) {
          // [[X_a,X_b],X_c] = -ad(X_c) ad(X_a) X_b
          Eigen::VectorXd s = -(ad_[k] * (ad_[i] * unit(j)));
          s -= ad_[i] * (ad_[j] * unit(k));
          s -= ad_[j] * (ad_[k] * unit(i));
          defect = std::max(defect, s.lpNorm<Eigen::Infinity>());
        }
    return defect;
  }

 private:
  Eigen::VectorXd unit(int i) const {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim_);
    e(i) = 1.0;
    return e;
  }

  void check_dim(const Eigen::VectorXd& v) const {
    if (v.size() != dim_)
      throw std::invalid_argument("LieAlgebra: vector dimension mismatch");
  }

  int dim_;
  std::vector<Eigen::MatrixXd> tables_;
  std::vector<Eigen::MatrixXd> ad_;
};

/// su(2) in the Milnor frame: [X1,X2] = 2 X3, [X2,X3] = 2 X1, [X3,X1] = 2 X2.
inline const LieAlgebra& su2() {
  static const LieAlgebra alg = [] {
    std::vector<Eigen::MatrixXd> tables(3, Eigen::MatrixXd::Zero(3, 3));
    // tables[k](i,j) = c(i,j,k)
    tables[2](0, 1) = 2.0;
    tables[2](1, 0) = -2.0;
    tables[0](1, 2) = 2.0;
    tables[0](2, 1) = -2.0;
    tables[1](2, 0) = 2.0;
    tables[1](0, 2) = -2.0;
    return LieAlgebra(std::move(tables));
  }();
  return alg;
}

inline Eigen::VectorXd bracket(const LieAlgebra& alg, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y) {
  return alg.bracket(x, y);
}

/// Killing form B(X_i, X_j) = trace(ad X_i . ad X_j).
inline BilinearForm killing_form(const LieAlgebra& alg) {
  const int n = alg.dim();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      b(i, j) = b(j, i) = (alg.ad_basis(i) * alg.ad_basis(j)).trace();
  return BilinearForm{std::move(b)};
}

/// Orthogonal complement of k with respect to a nondegenerate form: the
/// solution space of form(k, .) = 0.
inline Subspace orthogonal_complement(const LieAlgebra& alg, const Subspace& k,
                                      const BilinearForm& form) {
  const int n = alg.dim();
  if (k.parent_dim() != n || form.matrix.rows() != n)
    throw std::invalid_argument("orthogonal_complement: dimension mismatch");
  if (!form.is_nondegenerate())
    throw std::invalid_argument("orthogonal_complement: degenerate form");
  if (k.dim() == 0) return Subspace::full(n);
  // Rows of k^T B are the orthogonality constraints; their kernel is p.
  Eigen::MatrixXd constraints = k.basis().transpose() * form.matrix;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = kRankTol * std::max(sv(0), 1e-300);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return Subspace::span(svd.matrixV().rightCols(n - rank));
}

/// Smallest Lie subalgebra containing p: iterate V <- V + [V, V] until the
/// rank stabilizes (at most dim steps).
inline Subspace generated_subalgebra(const LieAlgebra& alg, const Subspace& p) {
  if (p.parent_dim() != alg.dim())
    throw std::invalid_argument("generated_subalgebra: dimension mismatch");
  Subspace v = p;
  for (int iter = 0; iter <= alg.dim(); ++iter) {
    const int d = v.dim();
    if (d == 0 || d == alg.dim()) return v;
    Eigen::MatrixXd gens(alg.dim(), d + d * (d - 1) / 2);
    gens.leftCols(d) = v.basis();
    int col = d;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        gens.col(col++) = alg.bracket(v.basis().col(i), v.basis().col(j));
    Subspace next = Subspace::span(gens);
    if (next.dim() == v.dim()) return next;
    v = next;
  }
  return v;
}

/// Hoermander condition at the algebra level: p generates the whole algebra.
inline bool is_bracket_generating(const LieAlgebra& alg, const Subspace& p) {
  return generated_subalgebra(alg, p).dim() == alg.dim();
}

/// True iff [X_i, a] lies in a for every basis element X_i.
inline bool is_ideal(const LieAlgebra& alg, const Subspace& a,
                     double tol = kSubspaceTol) {
  if (a.parent_dim() != alg.dim())
    throw std::invalid_argument("is_ideal: dimension mismatch");
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      Eigen::VectorXd r = alg.ad_basis(i) * a.basis().col(j);
      if (!a.contains(r, tol)) return false;
    }
  return true;
}

/// Infinitesimal Ad(K)-invariance: [z, v] lies in p for z in k, v in p.
inline bool is_ad_invariant(const LieAlgebra& alg, const Subspace& k,
                            const Subspace& p, double tol = kSubspaceTol) {
  if (k.parent_dim() != alg.dim() || p.parent_dim() != alg.dim())
    throw std::invalid_argument("is_ad_invariant: dimension mismatch");
  for (int i = 0; i < k.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) {
      Eigen::VectorXd r = alg.bracket(k.basis().col(i), p.basis().col(j));
      if (!p.contains(r, tol)) return false;
    }
  return true;
}

/// True iff k is closed under the bracket (defect below tol).
inline bool is_subalgebra(const LieAlgebra& alg, const Subspace& k,
                          double tol = kSubspaceTol) {
  for (int i = 0; i < k.dim(); ++i)
    for (int j = i + 1; j < k.dim(); ++j) {
      Eigen::VectorXd r = alg.bracket(k.basis().col(i), k.basis().col(j));
      if (!k.contains(r, tol)) return false;
    }
  return true;
}

}  // namespace liespec
