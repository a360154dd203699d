#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "liespec/geodesics.hpp"
#include "liespec/lie_algebra.hpp"
#include "liespec/metric.hpp"
#include "liespec/spectrum.hpp"
#include "liespec/threads.hpp"

namespace liespec {

/// One metric of the family under study with its computed invariants.
struct MetricRecord {
  double beta = 0.0;
  std::array<double, 3> milnor{1.0, 1.0, 1.0};
  double lambda1 = 0.0;
  double diameter = 0.0;
  double product = 0.0;  // lambda1 * diameter^2
  std::map<std::string, bool> checks;
};

/// Sweep result: per-metric records plus family-level outcomes. sup_product
/// is an empirical supremum over the sampled family only; it is reported,
/// never asserted as the true bounding constant.
struct ConjectureReport {
  std::vector<MetricRecord> records;
  double sup_product = 0.0;
  double inf_product = 0.0;
  std::map<std::string, bool> outcomes;
  std::string note;
};

/// Engine budgets used by the named checks and the sweep.
struct HarnessOptions {
  int n_directions = 1200;
  int n_probes = 12000;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  /// Second and third Milnor parameters; 1,1 keeps the family axisymmetric
  /// (the only case with a boundedness claim — other values run the same
  /// pipeline without one).
  double a2 = 1.0;
  double a3 = 1.0;
  int n_directions = 800;
  int n_probes = 8000;
  std::uint64_t seed = 0;
};

namespace detail {

inline Eigen::Vector3d metric_eigenvalues3(const Metric& g) {
  if (g.dim() != 3) throw std::invalid_argument("expected a 3x3 metric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(
      Eigen::Matrix3d(g.gram()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

}  // namespace detail

/// Diameter-engine parameters tuned for repeated sweep/check use: the sample
/// stride follows the softest axis for accuracy, and the integration horizon
/// is a bounded multiple of the middle scale — stretching one axis saturates
/// the diameter instead of growing it, so a capped horizon stays sufficient
/// while keeping the cost flat across the family.
inline DiameterParams sweep_diameter_params(const Metric& g, int n_directions,
                                            int n_probes, std::uint64_t seed) {
  const Eigen::Vector3d ev = detail::metric_eigenvalues3(g);
  DiameterParams p;
  p.n_directions = n_directions;
  p.n_probes = n_probes;
  p.arc_step = 0.01 * std::sqrt(ev(0));
  p.max_length = 1.25 * M_PI * std::sqrt(ev(1)) *
                 std::min(std::sqrt(ev(2) / ev(1)), 2.0);
  p.match_radius = 0.0;  // measured covering radius
  p.seed = seed;
  return p;
}

/// Lower bound on the spectral-gap/diameter product for compact homogeneous
/// spaces: lambda1 * diam^2 >= pi^2/4. The 2% tolerance absorbs the diameter
/// estimator's validated error.
inline bool check_li(const MetricRecord& record) {
  const double bound = M_PI * M_PI / 4.0;
  return record.product >= bound * (1.0 - 0.02);
}

/// Scaling law: lambda1(c g) = lambda1(g)/c (exact up to solver noise) and
/// diam(c g) = sqrt(c) diam(g) (up to estimator tolerance).
inline bool check_scaling(const Metric& g, double c,
                          const HarnessOptions& opts = {}) {
  if (!(c > 0.0))
    throw std::invalid_argument("check_scaling: c must be positive");
  const Metric scaled = scale_metric(g, c);
  const double l1 = lambda1(g).lambda1;
  const double l1c = lambda1(scaled).lambda1;
  if (std::abs(l1c * c / l1 - 1.0) > 1e-10) return false;
  const double d = diameter(g, sweep_diameter_params(g, opts.n_directions,
                                                     opts.n_probes, opts.seed))
                       .value;
  const double dc =
      diameter(scaled, sweep_diameter_params(scaled, opts.n_directions,
                                             opts.n_probes, opts.seed))
          .value;
  return std::abs(dc / (std::sqrt(c) * d) - 1.0) <= 0.02;
}

/// The quotient eigenvalue dominates the Hopf-fibration family: the base
/// eigenfunctions lift, so lambda1 of every fiber scaling stays at or below
/// the base value.
inline bool check_submersion(const std::vector<double>& beta_grid) {
  const double bound = lambda1_quotient(1.0) + 1e-8;
  for (double beta : beta_grid) {
    if (!(beta > 0.0))
      throw std::invalid_argument("check_submersion: beta must be positive");
    if (lambda1(berger_metric(1.0, beta)).lambda1 > bound) return false;
  }
  return true;
}

/// The horizontal plane span{X2, X3} generates the full algebra in one
/// closure step (and the closure is an ideal), while a single axis does not
/// generate.
inline bool check_bracket_generation() {
  const LieAlgebra& alg = su2();
  Eigen::MatrixXd plane(3, 2);
  plane << 0, 0, 1, 0, 0, 1;
  Eigen::MatrixXd axis(3, 1);
  axis << 1, 0, 0;
  const Subspace p = Subspace::span(plane);
  const Subspace k = Subspace::span(axis);
  return is_bracket_generating(alg, p) && !is_bracket_generating(alg, k) &&
         is_ideal(alg, generated_subalgebra(alg, p));
}

/// Full pipeline for one member of the one-parameter family: metric
/// milnor(sqrt(beta), a2, a3), its lambda1 and diameter, the product, and the
/// pointwise checks.
inline MetricRecord berger_record(double beta, const SweepOptions& opts = {}) {
  if (!(beta > 0.0))
    throw std::invalid_argument("berger_record: beta must be positive");
  const double a1 = std::sqrt(beta);
  const Metric g = milnor_metric(a1, opts.a2, opts.a3);
  MetricRecord rec;
  rec.beta = beta;
  rec.milnor = {a1, opts.a2, opts.a3};
  rec.lambda1 = lambda1(g).lambda1;
  rec.diameter =
      diameter(g, sweep_diameter_params(g, opts.n_directions, opts.n_probes,
                                        opts.seed))
          .value;
  rec.product = rec.lambda1 * rec.diameter * rec.diameter;
  rec.checks["li"] = check_li(rec);
  // Pointwise eigenvalue ceiling: the quotient value for the axisymmetric
  // family; otherwise the Rayleigh quotient of the weight-zero vector in the
  // five-dimensional representation, which reduces to the same number at
  // a2 = a3 = 1.
  const double ceiling =
      (opts.a2 == 1.0 && opts.a3 == 1.0)
          ? lambda1_quotient(1.0)
          : 4.0 / (opts.a2 * opts.a2) + 4.0 / (opts.a3 * opts.a3);
  rec.checks["submersion"] = rec.lambda1 <= ceiling + 1e-8;
  return rec;
}

/// Sweep the one-parameter family over [beta_min, beta_max] on a linear or
/// log grid. Per-grid-point records run independently in parallel; assembly
/// is ordered by grid index, so the report is deterministic.
inline ConjectureReport sweep_berger(double beta_min, double beta_max,
                                     int steps, bool log_spacing,
                                     const SweepOptions& opts = {}) {
  if (!(beta_min > 0.0) || !(beta_max > beta_min))
    throw std::invalid_argument(
        "sweep_berger: need 0 < beta_min < beta_max (degenerate grid)");
  if (steps < 2)
    throw std::invalid_argument("sweep_berger: need at least 2 steps");
  if (!(opts.a2 > 0.0) || !(opts.a3 > 0.0))
    throw std::invalid_argument("sweep_berger: a2, a3 must be positive");

  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    grid[i] = log_spacing
                  ? std::exp(std::log(beta_min) +
                             t * (std::log(beta_max) - std::log(beta_min)))
                  : beta_min + t * (beta_max - beta_min);
  }

  ConjectureReport report;
  report.records.resize(steps);
  std::vector<std::exception_ptr> failures(steps);
  detail::parallel_for(static_cast<std::size_t>(steps), worker_count(),
                       [&](std::size_t i) {
                         try {
                           report.records[i] = berger_record(grid[i], opts);
                         } catch (...) {
                           failures[i] = std::current_exception();
                         }
                       });
  for (int i = 0; i < steps; ++i) {
    if (!failures[i]) continue;
    const std::string where = "beta=" + std::to_string(grid[i]) + ": ";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(where + e.what());
    }
  }

  bool li_all = true, submersion_all = true, diam_monotone = true;
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  for (const MetricRecord& r : report.records) {
    li_all = li_all && r.checks.at("li");
    submersion_all = submersion_all && r.checks.at("submersion");
    sup = std::max(sup, r.product);
    inf = std::min(inf, r.product);
  }
  for (int i = 0; i + 1 < steps; ++i)
    diam_monotone = diam_monotone &&
                    report.records[i + 1].diameter >=
                        report.records[i].diameter * (1.0 - 0.03);
  // Large beta stretches one axis only; the diameter saturates there, so the
  // top of the grid should be flat within estimator noise.
  double plateau_min = std::numeric_limits<double>::infinity();
  double plateau_max = -std::numeric_limits<double>::infinity();
  int plateau_count = 0;
  for (const MetricRecord& r : report.records)
    if (r.beta >= 50.0) {
      plateau_min = std::min(plateau_min, r.diameter);
      plateau_max = std::max(plateau_max, r.diameter);
      ++plateau_count;
    }
  const bool plateau =
      plateau_count < 2 || (plateau_max - plateau_min) <= 0.05 * plateau_max;

  report.sup_product = sup;
  report.inf_product = inf;
  report.outcomes["li_all"] = li_all;
  report.outcomes["submersion_all"] = submersion_all;
  report.outcomes["diam_monotone"] = diam_monotone;
  report.outcomes["plateau"] = plateau;
  report.note =
      "sup_product is the empirical supremum over the sampled grid, a "
      "stand-in for the bounding constant; the closed-form constant would "
      "also need the diameter of the quotient sphere in its bi-invariant "
      "normalization, which this tool does not compute.";
  return report;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline bool check_or_false(const MetricRecord& r, const std::string& name) {
  auto it = r.checks.find(name);
  return it != r.checks.end() && it->second;
}

}  // namespace detail

/// Serialize a report. CSV carries the per-record rows only; JSON mirrors the
/// record fields and adds the family-level outcomes. Both are deterministic:
/// equal reports serialize to equal bytes.
inline std::string emit_report(const ConjectureReport& report,
                               std::string_view format) {
  if (format == "csv") {
    std::string out = "beta,lambda1,diameter,product,li_ok,submersion_ok\n";
    for (const MetricRecord& r : report.records) {
      out += detail::format_double(r.beta);
      out += ',';
      out += detail::format_double(r.lambda1);
      out += ',';
      out += detail::format_double(r.diameter);
      out += ',';
      out += detail::format_double(r.product);
      out += ',';
      out += detail::check_or_false(r, "li") ? '1' : '0';
      out += ',';
      out += detail::check_or_false(r, "submersion") ? '1' : '0';
      out += '\n';
    }
    return out;
  }
  if (format == "json") {
    nlohmann::json doc;
    doc["records"] = nlohmann::json::array();
    for (const MetricRecord& r : report.records) {
      nlohmann::json jr;
      jr["beta"] = r.beta;
      jr["milnor"] = r.milnor;
      jr["lambda1"] = r.lambda1;
      jr["diameter"] = r.diameter;
      jr["product"] = r.product;
      jr["checks"] = r.checks;
      doc["records"].push_back(std::move(jr));
    }
    doc["sup_product"] = report.sup_product;
    doc["inf_product"] = report.inf_product;
    doc["outcomes"] = report.outcomes;
    doc["note"] = report.note;
    return doc.dump(2) + "\n";
  }
  throw std::invalid_argument("emit_report: unknown format '" +
                              std::string(format) + "' (use csv or json)");
}

}  // namespace liespec
