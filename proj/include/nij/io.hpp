#pragma once

// JSON instance format:
//   { "n": 4,
//     "C": [[i, j, [c_1, ..., c_n]], ...],   nonzero brackets only, 1-based, i < j
//     "g": n x n,
//     "J": [J1, J2, J3],                     each n x n, row = output component
//     "meta": {...} }                        optional, ignored on read
// Rational scalars are "p/q" strings, float scalars are JSON numbers. Integer
// numbers are exact and accepted by either backend.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nij/error.hpp"
#include "nij/hn_structure.hpp"
#include "nij/lie_frame.hpp"
#include "nij/residual.hpp"
#include "nij/scalar.hpp"
#include "nij/torsion.hpp"

namespace nij {

using Json = nlohmann::ordered_json;

template <class T>
struct InstanceData {
  std::size_t n = 0;
  std::vector<T> structure;  // dense C^k_{ij}
  Matrix<T> metric;
  std::array<Matrix<T>, 3> j;
};

namespace detail {

enum class Literal { exact_int, rational, floating };

inline Literal classify(const Json& v) {
  if (v.is_string()) return Literal::rational;
  if (v.is_number_integer() || v.is_number_unsigned()) return Literal::exact_int;
  if (v.is_number_float()) {
    double d = v.get<double>();
    return std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15 ? Literal::exact_int : Literal::floating;
  }
  throw Error(ErrorKind::parse_error, "scalar must be a \"p/q\" string or a number, got " + v.dump());
}

template <Field T>
T scalar_from_json(const Json& v) {
  const Literal kind = classify(v);
  if constexpr (std::same_as<T, Rational>) {
    if (kind == Literal::floating)
      throw Error(ErrorKind::backend_mismatch, "float literal " + v.dump() + " in a rational computation");
    if (kind == Literal::rational) return parse_rational(v.get<std::string>());
    return v.is_number_float() ? Rational(v.get<double>()) : Rational(v.get<long>());
  } else {
    if (kind == Literal::rational) return parse_rational(v.get<std::string>()).get_d();
    return v.get<double>();
  }
}

template <Field T>
Matrix<T> matrix_from_json(const Json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) throw Error(ErrorKind::parse_error, what + " must be an " + std::to_string(n) + " x " + std::to_string(n) + " array");
  Matrix<T> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!v[r].is_array() || v[r].size() != n) throw Error(ErrorKind::parse_error, what + " row " + std::to_string(r + 1) + " has wrong length");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar_from_json<T>(v[r][c]);
  }
  return m;
}

inline void scan_literals(const Json& v, bool& has_rational, bool& has_float) {
  if (v.is_array()) {
    for (const auto& x : v) scan_literals(x, has_rational, has_float);
  } else if (v.is_string() || v.is_number()) {
    auto k = classify(v);
    has_rational |= k == Literal::rational;
    has_float |= k == Literal::floating;
  }
}

}  // namespace detail

/// Backend implied by the literals of an instance; mixing "p/q" strings with
/// non-integer numbers is rejected.
inline Backend instance_backend(const Json& doc) {
  bool has_rational = false, has_float = false;
  for (const char* key : {"C", "g", "J"})
    if (doc.contains(key)) detail::scan_literals(doc.at(key), has_rational, has_float);
  if (has_rational && has_float)
    throw Error(ErrorKind::backend_mismatch, "instance mixes rational strings and float numbers");
  return has_float ? Backend::floating : Backend::rational;
}

template <Field T>
InstanceData<T> parse_instance(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::parse_error, "instance must be a JSON object");
  for (const char* key : {"n", "C", "g", "J"})
    if (!doc.contains(key)) throw Error(ErrorKind::parse_error, std::string("missing field \"") + key + "\"");
  instance_backend(doc);
  if (!doc["n"].is_number_integer() || doc["n"].get<long>() <= 0) throw Error(ErrorKind::parse_error, "\"n\" must be a positive integer");
  InstanceData<T> out;
  out.n = doc["n"].get<std::size_t>();
  const std::size_t n = out.n;

  if (!doc["C"].is_array()) throw Error(ErrorKind::parse_error, "\"C\" must be an array");
  std::vector<BracketEntry<T>> brackets;
  for (const auto& e : doc["C"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_array())
      throw Error(ErrorKind::parse_error, "bracket entries must be [i, j, [c_1..c_n]]");
    long i = e[0].get<long>(), j = e[1].get<long>();
    if (i < 1 || j < 1 || i > static_cast<long>(n) || j > static_cast<long>(n) || i >= j)
      throw Error(ErrorKind::parse_error, "bracket indices must satisfy 1 <= i < j <= n, got " + e.dump());
    if (e[2].size() != n) throw Error(ErrorKind::parse_error, "bracket coefficient list must have length n");
    BracketEntry<T> b{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), {}};
    for (const auto& c : e[2]) b.coeffs.push_back(detail::scalar_from_json<T>(c));
    brackets.push_back(std::move(b));
  }
  out.structure = structure_from_brackets<T>(n, brackets);
  out.metric = detail::matrix_from_json<T>(doc["g"], n, "\"g\"");
  if (!doc["J"].is_array() || doc["J"].size() != 3) throw Error(ErrorKind::parse_error, "\"J\" must list three matrices");
  for (std::size_t a = 0; a < 3; ++a)
    out.j[a] = detail::matrix_from_json<T>(doc["J"][a], n, "\"J\"[" + std::to_string(a) + "]");
  return out;
}

template <Field T>
Json scalar_to_json(const T& x) {
  if constexpr (std::same_as<T, Rational>) {
    return x.get_str();
  } else {
    return x;
  }
}

template <Field T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field T>
Json instance_to_json(const LieFrame<T>& f, const std::array<Matrix<T>, 3>& j, Json meta = nullptr) {
  const std::size_t n = f.n();
  Json doc;
  doc["n"] = n;
  Json brackets = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = i + 1; jj < n; ++jj) {
      bool nonzero = false;
      Json coeffs = Json::array();
      for (std::size_t k = 0; k < n; ++k) {
        nonzero |= f.structure(i, jj, k) != T(0);
        coeffs.push_back(scalar_to_json(f.structure(i, jj, k)));
      }
      if (nonzero) brackets.push_back(Json::array({i + 1, jj + 1, std::move(coeffs)}));
    }
  doc["C"] = std::move(brackets);
  doc["g"] = matrix_to_json(f.metric());
  doc["J"] = Json::array({matrix_to_json(j[0]), matrix_to_json(j[1]), matrix_to_json(j[2])});
  if (!meta.is_null()) doc["meta"] = std::move(meta);
  return doc;
}

template <Field T>
Json instance_to_json(const HNStructure<T>& h, Json meta = nullptr) {
  return instance_to_json(h.frame(), {h.j(1).matrix(), h.j(2).matrix(), h.j(3).matrix()}, std::move(meta));
}

template <Field T>
Json row_to_json(const ResidualRow<T>& r) {
  return Json{{"identity", r.label},
              {"max_residual", scalar_to_json(r.max_residual)},
              {"argmax", Json::array({r.argmax[0] + 1, r.argmax[1] + 1, r.argmax[2] + 1})},
              {"zero", r.zero}};
}

template <Field T>
Json rows_to_json(const std::vector<ResidualRow<T>>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(row_to_json(r));
  return out;
}

/// { "status", "family_dim", "T": [{i,j,k,value}] with i<j<k, "residuals": [...] }
template <Field T>
Json torsion_to_json(const TorsionResult<T>& res, const std::vector<ResidualRow<T>>& residuals) {
  Json out;
  out["status"] = std::string(to_string(res.status));
  out["family_dim"] = res.family_dim;
  Json comps = Json::array();
  if (res.torsion) {
    const auto& t = *res.torsion;
    const std::size_t n = t.n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (t(i, j, k) != T(0))
            comps.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", scalar_to_json(t(i, j, k))}});
  }
  out["T"] = std::move(comps);
  out["residuals"] = rows_to_json(residuals);
  return out;
}

}  // namespace nij
