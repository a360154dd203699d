#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liespec/lie_algebra.hpp"
#include "liespec/metric.hpp"
#include "liespec/threads.hpp"

namespace liespec {

/// Quaternions stored as (w, x, y, z); the frame X1, X2, X3 maps to the
/// imaginary units i, j, k, so SU(2) is the unit sphere in R^4 and the
/// identity is (1, 0, 0, 0).
inline Eigen::Vector4d quat_mul(const Eigen::Vector4d& a,
                                const Eigen::Vector4d& b) {
  return {a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3),
          a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2),
          a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1),
          a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0)};
}

inline Eigen::Vector4d quat_identity() { return {1.0, 0.0, 0.0, 0.0}; }

/// Group exponential of v = v1 X1 + v2 X2 + v3 X3.
inline Eigen::Vector4d exp_alg(const Eigen::Vector3d& v) {
  const double r = v.norm();
  double sinc;  // sin(r)/r, stable near zero
  if (r < 1e-8) {
    sinc = 1.0 - r * r / 6.0;
  } else {
    sinc = std::sin(r) / r;
  }
  return {std::cos(r), sinc * v(0), sinc * v(1), sinc * v(2)};
}

/// Euler-Arnold momentum derivative for a left-invariant metric: with body
/// velocity Omega = g^{-1} M, the momentum evolves by
/// <dM/dt, X> = <M, [Omega, X]> for every X, i.e. dM/dt = ad(Omega)^T M.
inline Eigen::VectorXd euler_arnold_rhs(const LieAlgebra& alg, const Metric& g,
                                        const Eigen::VectorXd& M) {
  if (alg.dim() != g.dim() || M.size() != g.dim())
    throw std::invalid_argument("euler_arnold_rhs: dimension mismatch");
  const Eigen::VectorXd omega = g.inverse() * M;
  return alg.ad(omega).transpose() * M;
}

/// Same flow on su(2), the algebra this module integrates on.
inline Eigen::Vector3d euler_arnold_rhs(const Metric& g,
                                        const Eigen::Vector3d& M) {
  return euler_arnold_rhs(su2(), g, M);
}

/// Geodesic state on SU(2): group point and body momentum.
struct GeodesicState {
  Eigen::Vector4d q;
  Eigen::Vector3d M;
};

namespace detail {

// On su(2) the generic ad(Omega)^T M reduces to 2 M x Omega.
inline void geodesic_rhs(const Eigen::Matrix3d& ginv, const Eigen::Vector4d& q,
                         const Eigen::Vector3d& M, Eigen::Vector4d& dq,
                         Eigen::Vector3d& dM) {
  const Eigen::Vector3d omega = ginv * M;
  dq = quat_mul(q, {0.0, omega(0), omega(1), omega(2)});
  dM = 2.0 * M.cross(omega);
}

inline void rk4_step(const Eigen::Matrix3d& ginv, GeodesicState& s, double h) {
  Eigen::Vector4d k1q, k2q, k3q, k4q;
  Eigen::Vector3d k1m, k2m, k3m, k4m;
  geodesic_rhs(ginv, s.q, s.M, k1q, k1m);
  geodesic_rhs(ginv, s.q + 0.5 * h * k1q, s.M + 0.5 * h * k1m, k2q, k2m);
  geodesic_rhs(ginv, s.q + 0.5 * h * k2q, s.M + 0.5 * h * k2m, k3q, k3m);
  geodesic_rhs(ginv, s.q + h * k3q, s.M + h * k3m, k4q, k4m);
  s.q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  s.M += (h / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
  s.q.normalize();
}

}  // namespace detail

/// Integrate the geodesic through the identity with initial body momentum M0
/// for the given arc length, one RK4 step per sample interval. Requires unit
/// speed (M0^T g^{-1} M0 = 1) so that time equals arc length. Returns the
/// group points at arc lengths {0, step, 2·step, ..., length}; the endpoint is
/// always included (via a final shorter step when length is not a multiple).
inline std::vector<Eigen::Vector4d> integrate_geodesic(
    const Metric& g, const Eigen::Vector3d& M0, double length, double step) {
  if (g.dim() != 3)
    throw std::invalid_argument("integrate_geodesic: metric must be 3x3");
  if (!(step > 0.0))
    throw std::invalid_argument("integrate_geodesic: step must be positive");
  if (!(length >= 0.0))
    throw std::invalid_argument("integrate_geodesic: length must be >= 0");
  const Eigen::Matrix3d ginv = g.inverse();
  const double speed2 = M0.dot(ginv * M0);
  if (std::abs(speed2 - 1.0) > 1e-9)
    throw std::invalid_argument(
        "integrate_geodesic: momentum must have unit speed, "
        "M^T g^{-1} M = 1");
  std::vector<Eigen::Vector4d> points;
  const int whole = static_cast<int>(std::floor(length / step + 1e-12));
  const double tail = length - whole * step;
  points.reserve(whole + 2);
  GeodesicState s{quat_identity(), M0};
  points.push_back(s.q);
  for (int i = 0; i < whole; ++i) {
    detail::rk4_step(ginv, s, step);
    points.push_back(s.q);
  }
  if (tail > 1e-12 * std::max(length, 1.0)) {
    detail::rk4_step(ginv, s, tail);
    points.push_back(s.q);
  }
  return points;
}

struct DiameterParams {
  int n_directions = 2000;
  int n_probes = 20000;
  /// Spacing between recorded samples along each geodesic; 0 selects
  /// 0.01 * sqrt(lambda_max(g)).
  double arc_step = 0.0;
  /// Total length integrated per direction; 0 selects 4*pi*sqrt(lambda_max(g)).
  double max_length = 0.0;
  /// Probe-to-sample matching radius (Euclidean chord in R^4); 0 selects the
  /// measured covering radius of the sample set, which guarantees every probe
  /// matches.
  double match_radius = 0.0;
  std::uint64_t seed = 0;
};

struct DiameterEstimate {
  double value = 0.0;
  int n_directions = 0;
  int n_probes = 0;
  double arc_step = 0.0;
  double match_radius = 0.0;
  double max_length = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double to_unit_interval(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

// Uniform point on S^3 from three unit-interval coordinates.
inline Eigen::Vector4d s3_from_cube(double u1, double u2, double u3) {
  const double two_pi = 2.0 * M_PI;
  const double a = std::sqrt(std::max(0.0, 1.0 - u1));
  const double b = std::sqrt(std::max(0.0, u1));
  return {a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
          b * std::sin(two_pi * u3), b * std::cos(two_pi * u3)};
}

// Spherical Fibonacci point i of n, rotated by phase; the lattice poles are
// returned in the first coordinate so the layout respects an axisymmetric
// metric around X1.
inline Eigen::Vector3d fibonacci_dir(int i, int n, double phase) {
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * i + phase;
  return {z, rho * std::cos(phi), rho * std::sin(phi)};
}

struct SampleSet {
  std::vector<std::array<float, 4>> pos;
  int per_direction = 0;
  double arc_step = 0.0;

  double arc_of(std::size_t idx) const {
    const std::size_t curve_samples =
        pos.size() - 1;  // trailing entry is the identity
    if (idx >= curve_samples) return 0.0;
    return (static_cast<double>(idx % per_direction) + 1.0) * arc_step;
  }
};

// Sorted (cell key, sample index) pairs over a uniform 4D grid on [-1, 1]^4.
struct CellIndex {
  double cell = 0.0;
  long long per_axis = 0;
  std::vector<std::pair<long long, int>> entries;

  int coord_cell(double x) const {
    const long long c = static_cast<long long>(std::floor((x + 1.0) / cell));
    return static_cast<int>(std::clamp(c, 0ll, per_axis - 1));
  }

  long long key(int c0, int c1, int c2, int c3) const {
    return ((static_cast<long long>(c0) * per_axis + c1) * per_axis + c2) *
               per_axis +
           c3;
  }

  void build(double cell_size, const std::vector<std::array<float, 4>>& pts) {
    cell = cell_size;
    per_axis = static_cast<long long>(std::floor(2.0 / cell)) + 1;
    entries.clear();
    entries.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      entries.emplace_back(key(coord_cell(p[0]), coord_cell(p[1]),
                               coord_cell(p[2]), coord_cell(p[3])),
                           static_cast<int>(i));
    }
    std::sort(entries.begin(), entries.end());
  }

  template <typename Fn>
  void for_cell(long long k, Fn&& fn) const {
    auto lo = std::lower_bound(
        entries.begin(), entries.end(), std::make_pair(k, 0),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    for (; lo != entries.end() && lo->first == k; ++lo) fn(lo->second);
  }
};

inline double chord2(const Eigen::Vector4d& p, const std::array<float, 4>& s) {
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double d = p(k) - static_cast<double>(s[k]);
    acc += d * d;
  }
  return acc;
}

// Distance from probe to its nearest sample, by expanding shells of grid
// cells; shells farther than the current best cannot improve it.
inline double nearest_sample_distance(const CellIndex& grid,
                                      const std::vector<std::array<float, 4>>& pts,
                                      const Eigen::Vector4d& probe) {
  const int c0 = grid.coord_cell(probe(0));
  const int c1 = grid.coord_cell(probe(1));
  const int c2 = grid.coord_cell(probe(2));
  const int c3 = grid.coord_cell(probe(3));
  double best2 = std::numeric_limits<double>::infinity();
  const int max_radius = static_cast<int>(grid.per_axis);
  for (int r = 0; r <= max_radius; ++r) {
    if (best2 < std::numeric_limits<double>::infinity()) {
      const double floor_dist = (r - 1) * grid.cell;
      if (floor_dist > 0.0 && floor_dist * floor_dist > best2) break;
    }
    for (int d0 = -r; d0 <= r; ++d0) {
      const int j0 = c0 + d0;
      if (j0 < 0 || j0 >= grid.per_axis) continue;
      for (int d1 = -r; d1 <= r; ++d1) {
        const int j1 = c1 + d1;
        if (j1 < 0 || j1 >= grid.per_axis) continue;
        for (int d2 = -r; d2 <= r; ++d2) {
          const int j2 = c2 + d2;
          if (j2 < 0 || j2 >= grid.per_axis) continue;
          const int dmax =
              std::max({std::abs(d0), std::abs(d1), std::abs(d2)});
          for (int d3 = -r; d3 <= r; ++d3) {
            if (std::max(dmax, std::abs(d3)) != r) continue;  // shell only
            const int j3 = c3 + d3;
            if (j3 < 0 || j3 >= grid.per_axis) continue;
            grid.for_cell(grid.key(j0, j1, j2, j3), [&](int idx) {
              best2 = std::min(best2, chord2(probe, pts[idx]));
            });
          }
        }
      }
    }
  }
  return std::sqrt(best2);
}

}  // namespace detail

/// Estimate the diameter as the eccentricity of the identity: shoot unit-speed
/// geodesics in a deterministic spread of momenta, record points along them,
/// and for each quasi-random probe point on the group take the cheapest
/// arrival — recorded arc plus the certified hop from the sample to the probe
/// — over all samples in the probe's matching neighborhood. Peer bounds are
/// then reconciled through the triangle inequality, and the worst probe is
/// reported. Deterministic for a fixed seed, independent of the worker count.
inline DiameterEstimate diameter(const Metric& g,
                                 const DiameterParams& params = {}) {
  if (g.dim() != 3)
    throw std::invalid_argument("diameter: metric must be 3x3");
  if (params.n_directions < 1 || params.n_probes < 1)
    throw std::invalid_argument(
        "diameter: need at least one direction and one probe");
  if (params.arc_step < 0.0 || params.max_length < 0.0 ||
      params.match_radius < 0.0)
    throw std::invalid_argument("diameter: parameters must be nonnegative");

  const double sqrt_emax = std::sqrt(g.eig_max());
  const double step =
      params.arc_step > 0.0 ? params.arc_step : 0.01 * sqrt_emax;
  const double max_length =
      params.max_length > 0.0 ? params.max_length : 4.0 * M_PI * sqrt_emax;
  const int per_direction =
      static_cast<int>(std::floor(max_length / step + 1e-9));
  if (per_direction < 1)
    throw std::invalid_argument("diameter: max_length is below arc_step");

  // The sampling stride is a recording choice; the integrator keeps its own
  // finer step so that stiff (strongly anisotropic) metrics stay accurate.
  const double h_target = 0.01 * std::sqrt(g.eig_min());
  const int n_sub = std::max(
      1, static_cast<int>(std::ceil(step / h_target - 1e-12)));
  const double h = step / n_sub;

  const Eigen::Matrix3d gram = g.gram();
  const Eigen::Matrix3d ginv = g.inverse();

  std::uint64_t rng_state = params.seed;
  const double shift1 = detail::to_unit_interval(detail::splitmix64(rng_state));
  const double shift2 = detail::to_unit_interval(detail::splitmix64(rng_state));
  const double shift3 = detail::to_unit_interval(detail::splitmix64(rng_state));
  const double phase =
      2.0 * M_PI * detail::to_unit_interval(detail::splitmix64(rng_state));

  // Momenta on the unit-speed shell {M : M^T g^{-1} M = 1}, built from a
  // Fibonacci spread of directions u in two alternating families: velocities
  // proportional to u (M ~ g u) and momenta proportional to u. The families
  // coincide for isotropic metrics and jointly cover both charts when the
  // metric is strongly anisotropic.
  const int n_dirs = params.n_directions;
  std::vector<Eigen::Vector3d> momenta(n_dirs);
  for (int i = 0; i < n_dirs; ++i) {
    const Eigen::Vector3d u = detail::fibonacci_dir(i, n_dirs, phase);
    if (i % 2 == 0) {
      const Eigen::Vector3d gu = gram * u;
      momenta[i] = gu / std::sqrt(u.dot(gu));
    } else {
      momenta[i] = u / std::sqrt(u.dot(ginv * u));
    }
  }

  const std::size_t total_samples =
      static_cast<std::size_t>(n_dirs) * per_direction + 1;
  detail::SampleSet samples;
  samples.per_direction = per_direction;
  samples.arc_step = step;
  samples.pos.resize(total_samples);
  samples.pos.back() = {1.0f, 0.0f, 0.0f, 0.0f};  // identity, arc zero

  const unsigned workers = worker_count();
  detail::parallel_for(static_cast<std::size_t>(n_dirs), workers,
                       [&](std::size_t i) {
                         GeodesicState s{quat_identity(), momenta[i]};
                         std::array<float, 4>* out =
                             &samples.pos[i * per_direction];
                         for (int k = 0; k < per_direction; ++k) {
                           for (int sub = 0; sub < n_sub; ++sub)
                             detail::rk4_step(ginv, s, h);
                           out[k] = {static_cast<float>(s.q(0)),
                                     static_cast<float>(s.q(1)),
                                     static_cast<float>(s.q(2)),
                                     static_cast<float>(s.q(3))};
                         }
                       });

  const int n_probes = params.n_probes;
  std::vector<Eigen::Vector4d> probes(n_probes);
  for (int i = 0; i < n_probes; ++i) {
    const std::uint64_t idx = static_cast<std::uint64_t>(i) + 1;
    const double u1 = std::fmod(detail::halton(idx, 2) + shift1, 1.0);
    const double u2 = std::fmod(detail::halton(idx, 3) + shift2, 1.0);
    const double u3 = std::fmod(detail::halton(idx, 5) + shift3, 1.0);
    probes[i] = detail::s3_from_cube(u1, u2, u3);
  }

  double match_radius = params.match_radius;
  if (match_radius == 0.0) {
    // Measured covering radius, so every probe has a sample in reach. The
    // arc-step term absorbs the sampling phase along a curve: a later pass of
    // the same geodesic samples the closest approach at a different phase and
    // can land up to sqrt(d^2 + (step/2)^2) - d nearer than the first pass;
    // without the widening, a knife-edge probe could match only the late pass
    // and report its inflated arc.
    detail::CellIndex coarse;
    coarse.build(0.04, samples.pos);
    std::vector<double> nearest(n_probes);
    detail::parallel_for(static_cast<std::size_t>(n_probes), workers,
                         [&](std::size_t i) {
                           nearest[i] = detail::nearest_sample_distance(
                               coarse, samples.pos, probes[i]);
                         });
    double worst = 0.0;
    for (double d : nearest) worst = std::max(worst, d);
    match_radius = std::max(
        std::sqrt(worst * worst + 0.25 * step * step) * 1.0001, 1e-12);
  }

  // Certified hop cost between nearby group elements: the one-parameter
  // subgroup from a to b has length |log(a^-1 b)|_g, so d(a, b) never exceeds
  // it. Using the realized per-pair cost instead of a global
  // radius-times-stretch slack keeps the bound tight for anisotropic metrics,
  // where a chord-ball crossing along a cheap direction costs far less than
  // the worst-stretch conversion suggests.
  const double sqrt_emin = std::sqrt(g.eig_min());
  const auto hop_cost = [&gram, sqrt_emin](const Eigen::Vector4d& a,
                                           const Eigen::Vector4d& b) {
    const Eigen::Vector4d r =
        quat_mul(Eigen::Vector4d(a(0), -a(1), -a(2), -a(3)), b);
    const Eigen::Vector3d v = r.tail<3>();
    const double vn = v.norm();
    const double theta = std::atan2(vn, r(0));
    // A half-turn admits a logarithm along every axis; take the cheapest.
    if (vn <= 1e-12) return theta * sqrt_emin;
    const Eigen::Vector3d w = (theta / vn) * v;
    return std::sqrt(w.dot(gram * w));
  };

  detail::CellIndex grid;
  grid.build(std::max(match_radius, 1e-3), samples.pos);
  const double radius2 = match_radius * match_radius;
  std::vector<double> dhat(n_probes,
                           std::numeric_limits<double>::infinity());
  std::vector<char> matched(n_probes, 0);
  detail::parallel_for(
      static_cast<std::size_t>(n_probes), workers, [&](std::size_t i) {
        const Eigen::Vector4d& p = probes[i];
        const int c0 = grid.coord_cell(p(0));
        const int c1 = grid.coord_cell(p(1));
        const int c2 = grid.coord_cell(p(2));
        const int c3 = grid.coord_cell(p(3));
        double best = std::numeric_limits<double>::infinity();
        for (int d0 = -1; d0 <= 1; ++d0)
          for (int d1 = -1; d1 <= 1; ++d1)
            for (int d2 = -1; d2 <= 1; ++d2)
              for (int d3 = -1; d3 <= 1; ++d3) {
                const int j0 = c0 + d0, j1 = c1 + d1, j2 = c2 + d2,
                          j3 = c3 + d3;
                if (j0 < 0 || j1 < 0 || j2 < 0 || j3 < 0 ||
                    j0 >= grid.per_axis || j1 >= grid.per_axis ||
                    j2 >= grid.per_axis || j3 >= grid.per_axis)
                  continue;
                grid.for_cell(grid.key(j0, j1, j2, j3), [&](int idx) {
                  const std::array<float, 4>& sf = samples.pos[idx];
                  if (detail::chord2(p, sf) > radius2) return;
                  matched[i] = 1;
                  const Eigen::Vector4d s(sf[0], sf[1], sf[2], sf[3]);
                  best = std::min(best, samples.arc_of(idx) + hop_cost(s, p));
                });
              }
        dhat[i] = best;
      });

  for (int i = 0; i < n_probes; ++i)
    if (!matched[i])
      throw std::runtime_error(
          "diameter: a probe found no sample within the match radius; "
          "increase match_radius, n_directions, n_probes, or max_length");

  // Each dhat upper-bounds the distance to its probe, but a probe whose only
  // matched samples arrive on late or wrong-direction passes carries a
  // grossly loose bound. Tightening every bound through its peers —
  // d(e, p) <= d(e, q) + d(q, p) <= dhat[q] + hop_cost(q, p) — removes such
  // spikes while staying an upper bound by the triangle inequality. Only the
  // maximum is needed: scan in decreasing dhat order and stop once the
  // untightened value cannot beat the best tightened one.
  std::vector<int> order(n_probes);
  for (int i = 0; i < n_probes; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return dhat[a] != dhat[b] ? dhat[a] > dhat[b] : a < b;
  });
  double value = 0.0;
  for (int rank = 0; rank < n_probes; ++rank) {
    const int i = order[rank];
    if (dhat[i] <= value) break;
    const Eigen::Vector4d& p = probes[i];
    double tightened = dhat[i];
    for (int q = 0; q < n_probes; ++q) {
      const double bound = dhat[q] + hop_cost(probes[q], p);
      tightened = std::min(tightened, bound);
    }
    value = std::max(value, tightened);
  }
  // The estimate cannot certify anything past the integrated horizon.
  value = std::min(value, max_length);

  DiameterEstimate est;
  est.value = value;
  est.n_directions = n_dirs;
  est.n_probes = n_probes;
  est.arc_step = step;
  est.match_radius = match_radius;
  est.max_length = max_length;
  est.seed = params.seed;
  return est;
}

}  // namespace liespec
