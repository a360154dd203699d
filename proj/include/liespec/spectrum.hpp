#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "liespec/metric.hpp"

namespace liespec {

/// Irreducible representation of su(2) with label n (dimension n + 1),
/// holding the images of the Milnor-frame basis X1, X2, X3 in the weight
/// basis: pi(X1) = diag(i*m) with m = n, n-2, ..., -n.
struct Irrep {
  int n;
  std::array<Eigen::MatrixXcd, 3> mats;

  int dim() const { return n + 1; }
};

/// Casimir scalar of the label-n irrep.
inline double casimir_eigenvalue(int n) {
  return static_cast<double>(n) * (n + 2);
}

/// Spin-(n/2) matrices: pi(X1) = 2i Jz, pi(X2) = 2i Jy, pi(X3) = 2i Jx in the
/// basis ordered by descending weight. All three are skew-Hermitian and
/// satisfy pi([X,Y]) = [pi(X), pi(Y)] and -sum pi(Xk)^2 = n(n+2) I.
inline Irrep irrep_su2(int n) {
  if (n < 0) throw std::invalid_argument("irrep_su2: n must be nonnegative");
  const int d = n + 1;
  const std::complex<double> im(0.0, 1.0);
  Eigen::MatrixXcd x1 = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd x2 = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd x3 = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) x1(k, k) = im * static_cast<double>(n - 2 * k);
  // Ladder entries a_k = sqrt(k (n - k + 1)): J+ |m_k> = a_k |m_{k-1}>.
  for (int k = 1; k < d; ++k) {
    const double a = std::sqrt(static_cast<double>(k) * (n - k + 1));
    x2(k - 1, k) = a;       // 2i Jy = J+ - J-
    x2(k, k - 1) = -a;
    x3(k - 1, k) = im * a;  // 2i Jx = i (J+ + J-)
    x3(k, k - 1) = im * a;
  }
  return Irrep{n, {std::move(x1), std::move(x2), std::move(x3)}};
}

/// Laplace-Beltrami operator of the left-invariant metric g on the label-n
/// irrep: Delta = -sum_{a,b} (g^{-1})_{ab} pi(X_a) pi(X_b). Hermitian positive
/// semidefinite; equals the Casimir n(n+2) I for the bi-invariant metric.
inline Eigen::MatrixXcd laplacian_on_irrep(const Metric& g, const Irrep& rep) {
  if (g.dim() != 3)
    throw std::invalid_argument("laplacian_on_irrep: metric must be 3x3");
  const Eigen::MatrixXd& ginv = g.inverse();
  const int d = rep.dim();
  Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (ginv(a, b) == 0.0) continue;
      delta.noalias() -= ginv(a, b) * (rep.mats[a] * rep.mats[b]);
    }
  return 0.5 * (delta + delta.adjoint().eval());
}

/// Smallest positive Laplace eigenvalue with its certificate.
struct SpectrumResult {
  double lambda1 = 0.0;
  /// Irrep label achieving lambda1.
  int witness_n = 0;
  /// Peter-Weyl multiplicity contributed by the witness irrep: eigenspace
  /// dimension inside the irrep times its (n+1)-fold repetition.
  int witness_multiplicity_dim = 0;
  /// Largest irrep label diagonalized. Certificate: for every n beyond it,
  /// lambda_min(g^{-1}) n (n+2) exceeds lambda1, so no larger irrep can
  /// improve the minimum.
  int truncation_n = 0;
};

struct Lambda1Options {
  /// Restrict to even labels (the representations that descend to SO(3)).
  bool so3 = false;
  /// Guard against runaway truncation loops.
  int max_n_cap = 4096;
};

/// lambda1 = min over nontrivial irreps of the smallest Laplace eigenvalue,
/// by dense Hermitian diagonalization per label. The Casimir comparison
/// Delta >= lambda_min(g^{-1}) * n(n+2) terminates the scan.
inline SpectrumResult lambda1(const Metric& g,
                              const Lambda1Options& opts = {}) {
  if (g.dim() != 3)
    throw std::invalid_argument("lambda1: metric must be 3x3");
  const double floor_coeff = 1.0 / g.eig_max();  // = lambda_min(g^{-1})
  SpectrumResult res;
  double best = std::numeric_limits<double>::infinity();
  const int start = opts.so3 ? 2 : 1;
  const int stride = opts.so3 ? 2 : 1;
  int last_diagonalized = 0;
  for (int n = start;; n += stride) {
    if (n > opts.max_n_cap)
      throw std::runtime_error("lambda1: truncation exceeded max_n_cap");
    if (best < std::numeric_limits<double>::infinity() &&
        floor_coeff * casimir_eigenvalue(n) > best)
      break;
    const Irrep rep = irrep_su2(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        laplacian_on_irrep(g, rep), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();
    last_diagonalized = n;
    const double mu = ev.minCoeff();
    if (mu < best) {
      best = mu;
      res.witness_n = n;
      int mult = 0;
      for (int i = 0; i < ev.size(); ++i)
        if (ev(i) <= mu * (1.0 + 1e-9) + 1e-12) ++mult;
      res.witness_multiplicity_dim = mult * rep.dim();
    }
  }
  res.lambda1 = best;
  res.truncation_n = last_diagonalized;
  return res;
}

/// Smallest positive eigenvalue of the base space of the torus submersion:
/// p = span{X2, X3} with an isotropic metric c * identity. Computed as the
/// smallest Laplace eigenvalue on the weight-zero lines of the even-label
/// irreps (the functions invariant under the right torus action), with the
/// same Casimir truncation.
inline double lambda1_quotient(const Eigen::Matrix2d& p_gram,
                               int max_n_cap = 4096) {
  const double scale = p_gram.lpNorm<Eigen::Infinity>();
  if (std::abs(p_gram(0, 0) - p_gram(1, 1)) > 1e-12 * scale ||
      std::abs(p_gram(0, 1)) > 1e-12 * scale ||
      std::abs(p_gram(1, 0)) > 1e-12 * scale)
    throw std::invalid_argument(
        "lambda1_quotient: base metric must be a positive multiple of the "
        "identity on p");
  const double c = 0.5 * (p_gram(0, 0) + p_gram(1, 1));
  if (!(c > 0.0))
    throw std::invalid_argument("lambda1_quotient: base metric must be positive");

  const Metric extended = scale_metric(milnor_metric(1.0, 1.0, 1.0), c);
  double best = std::numeric_limits<double>::infinity();
  for (int n = 2;; n += 2) {
    if (n > max_n_cap)
      throw std::runtime_error("lambda1_quotient: truncation exceeded cap");
    if (best < std::numeric_limits<double>::infinity() &&
        casimir_eigenvalue(n) / c > best)
      break;
    const Irrep rep = irrep_su2(n);
    const Eigen::MatrixXcd delta = laplacian_on_irrep(extended, rep);
    // Weight zero sits at index n/2 in the descending-weight ordering and is
    // one-dimensional within the irrep.
    const int idx = n / 2;
    const double mu = delta(idx, idx).real();
    best = std::min(best, mu);
  }
  return best;
}

inline double lambda1_quotient(double c, int max_n_cap = 4096) {
  if (!(c > 0.0))
    throw std::invalid_argument("lambda1_quotient: c must be positive");
  return lambda1_quotient(Eigen::Matrix2d(c * Eigen::Matrix2d::Identity()),
                          max_n_cap);
}

}  // namespace liespec
