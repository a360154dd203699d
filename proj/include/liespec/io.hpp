#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liespec/lie_algebra.hpp"
#include "liespec/metric.hpp"

namespace liespec {

/// Build an algebra from `{"dim": n, "brackets": [[i, j, [c_k...]], ...]}`
/// with zero-based indices; pairs not listed have zero bracket. The usual
/// antisymmetry/Jacobi validation runs on the assembled table.
inline LieAlgebra lie_algebra_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("dim"))
    throw std::invalid_argument("lie_algebra_from_json: missing \"dim\"");
  const int n = doc.at("dim").get<int>();
  if (n < 1)
    throw std::invalid_argument("lie_algebra_from_json: dim must be >= 1");
  std::vector<Eigen::MatrixXd> tables(n, Eigen::MatrixXd::Zero(n, n));
  std::set<std::pair<int, int>> seen;
  for (const auto& entry : doc.value("brackets", nlohmann::json::array())) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument(
          "lie_algebra_from_json: each bracket must be [i, j, [c...]]");
    const int i = entry.at(0).get<int>();
    const int j = entry.at(1).get<int>();
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::invalid_argument(
          "lie_algebra_from_json: basis index out of range");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      throw std::invalid_argument(
          "lie_algebra_from_json: duplicate bracket for a basis pair");
    const auto& coeffs = entry.at(2);
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n)
      throw std::invalid_argument(
          "lie_algebra_from_json: coefficient list must have length dim");
    for (int k = 0; k < n; ++k) {
      const double c = coeffs.at(k).get<double>();
      tables[k](i, j) = c;
      tables[k](j, i) = -c;
    }
  }
  return LieAlgebra(std::move(tables));
}

inline LieAlgebra lie_algebra_from_json_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("lie_algebra_from_json: ") +
                                e.what());
  }
  return lie_algebra_from_json(doc);
}

/// Build a metric from `{"gram": [[...], ...]}`; the constructor enforces
/// symmetry and positive definiteness.
inline Metric metric_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("gram"))
    throw std::invalid_argument("metric_from_json: missing \"gram\"");
  const auto& rows = doc.at("gram");
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("metric_from_json: gram must be a matrix");
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("metric_from_json: gram must be square");
    for (int j = 0; j < n; ++j) gram(i, j) = row.at(j).get<double>();
  }
  return Metric(gram);
}

inline Metric metric_from_json_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("metric_from_json: ") + e.what());
  }
  return metric_from_json(doc);
}

}  // namespace liespec
