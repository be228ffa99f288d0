#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oprange/classify.hpp"
#include "oprange/linrel.hpp"
#include "oprange/matrix.hpp"
#include "oprange/tolerance.hpp"

namespace oprange::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

template <Scalar T>
Json scalar(const T& v) {
  if constexpr (is_exact_v<T>) {
    return to_string(v);
  } else {
    return v;
  }
}

inline Json number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

template <Scalar T>
Json matrix(const Matrix<T>& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar(m(i, j)));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

template <Scalar T>
Json subspace(const Subspace<T>& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"rank", s.rank()}, {"basis", matrix(s.basis())}};
}

template <Scalar T>
Json relation(const LinearRelation<T>& r) {
  return Json{{"dim_h", r.dim_h()}, {"dim_k", r.dim_k()}, {"graph", subspace(r.graph())}};
}

inline Json criteria(const std::vector<Criterion>& list) {
  Json out = Json::object();
  for (const auto& c : list) out[c.name] = c.verdict;
  return out;
}

inline Json tolerances(const Tolerance& tol, bool exact) {
  return Json{{"rank_rtol", tol.rank_rtol}, {"eq_atol", tol.eq_atol}, {"applied", !exact}};
}

inline Json error(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

/// Flattened "path = value" lines, one per leaf.
inline void pretty(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    if (j.empty()) out += prefix + " = {}\n";
    for (const auto& [k, v] : j.items()) pretty(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) pretty(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + " = " + j.dump() + "\n";
  }
}

}  // namespace oprange::report
