#pragma once

// Lie algebras by structure constants with a left-invariant metric.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "nij/error.hpp"
#include "nij/frame.hpp"
#include "nij/linalg.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// One nonzero bracket [X_i, X_j] = Σ_k coeffs[k] X_k (0-based indices).
template <class T>
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<T> coeffs;
};

/// Dense C^k_{ij} from a bracket table; the (j,i) entries follow by antisymmetry.
template <class T>
std::vector<T> structure_from_brackets(std::size_t n, std::span<const BracketEntry<T>> brackets) {
  std::vector<T> c(n * n * n, T(0));
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n || b.coeffs.size() != n)
      throw Error(ErrorKind::dimension_mismatch, "bracket entry out of range");
    if (b.i == b.j) throw Error(ErrorKind::precondition_violation, "bracket [X_i, X_i] must vanish");
    for (std::size_t k = 0; k < n; ++k) {
      c[(b.i * n + b.j) * n + k] = b.coeffs[k];
      c[(b.j * n + b.i) * n + k] = -b.coeffs[k];
    }
  }
  return c;
}

namespace detail {

// Σ_cyclic [X_i,[X_j,X_k]]^q, evaluated from the structure constants.
template <class T>
T jacobiator(std::span<const T> c, std::size_t n, std::size_t i, std::size_t j, std::size_t k, std::size_t q) {
  auto C = [&](std::size_t a, std::size_t b, std::size_t r) -> const T& { return c[(a * n + b) * n + r]; };
  T acc(0);
  for (std::size_t p = 0; p < n; ++p) acc += C(j, k, p) * C(i, p, q) + C(k, i, p) * C(j, p, q) + C(i, j, p) * C(k, p, q);
  return acc;
}

template <class T>
double max_abs(std::span<const T> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, magnitude(x));
  return m;
}

}  // namespace detail

/// First index triple (i<j<k) violating the Jacobi identity, if any.
template <Field T>
std::optional<std::array<std::size_t, 3>> jacobi_violation(std::span<const T> c, std::size_t n) {
  const double cmax = detail::max_abs(c);
  const double scale = cmax * cmax;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q)
          if (!is_zero(detail::jacobiator(c, n, i, j, k, q), scale)) return std::array{i, j, k};
  return std::nullopt;
}

/// Validates the algebra and metric, then computes the Levi-Civita
/// coefficients from the Koszul formula for left-invariant fields:
///   2 g(∇_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
template <Field T>
LieFrame<T> build_lie_frame(std::size_t n, std::vector<T> c, Matrix<T> g) {
  if (c.size() != n * n * n) throw Error(ErrorKind::dimension_mismatch, "structure constants must have n^3 entries");
  if (g.rows() != n || g.cols() != n) throw Error(ErrorKind::dimension_mismatch, "metric must be n x n");
  const double cscale = detail::max_abs(std::span<const T>(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(T(c[(i * n + j) * n + k] + c[(j * n + i) * n + k]), cscale))
          throw Error(ErrorKind::precondition_violation, "structure constants not antisymmetric at (" +
                                                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  if (auto bad = jacobi_violation<T>(c, n))
    throw Error(ErrorKind::not_a_lie_algebra, "Jacobi identity fails for (" + std::to_string((*bad)[0] + 1) + "," +
                                                  std::to_string((*bad)[1] + 1) + "," +
                                                  std::to_string((*bad)[2] + 1) + ")");
  if (!g.symmetric()) throw Error(ErrorKind::precondition_violation, "metric is not symmetric");

  Matrix<T> g_inv;
  try {
    g_inv = mat_inverse(g);
  } catch (const Error&) {
    throw Error(ErrorKind::degenerate_metric, "metric is degenerate");
  }

  auto data = std::make_shared<typename LieFrame<T>::Data>();
  data->n = n;
  auto C = [&](std::size_t a, std::size_t b, std::size_t r) -> const T& { return c[(a * n + b) * n + r]; };
  // g([X_a, X_b], X_r)
  std::vector<T> lowered_bracket(n * n * n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t r = 0; r < n; ++r) {
        T acc(0);
        for (std::size_t p = 0; p < n; ++p) acc += C(a, b, p) * g(p, r);
        lowered_bracket[(a * n + b) * n + r] = acc;
      }
  auto LB = [&](std::size_t a, std::size_t b, std::size_t r) -> const T& { return lowered_bracket[(a * n + b) * n + r]; };

  const T half = T(1) / T(2);
  data->gamma.assign(n * n * n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<T> low(n);
      for (std::size_t l = 0; l < n; ++l) low[l] = half * (LB(i, j, l) - LB(j, l, i) + LB(l, i, j));
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t l = 0; l < n; ++l) acc += g_inv(k, l) * low[l];
        data->gamma[(i * n + j) * n + k] = acc;
      }
    }
  data->brace.assign(n * n * n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        data->brace[(i * n + j) * n + k] = data->gamma[(i * n + j) * n + k] + data->gamma[(j * n + i) * n + k];

  data->structure = std::move(c);
  data->metric = std::move(g);
  data->metric_inverse = std::move(g_inv);
  data->mode = FrameMode::left_invariant;
  return LieFrame<T>(std::move(data));
}

namespace detail {

template <class T>
std::vector<T> contract_bilinear(const LieFrame<T>& f, std::span<const T> x, std::span<const T> y, bool braces) {
  const std::size_t n = f.n();
  if (x.size() != n || y.size() != n) throw Error(ErrorKind::dimension_mismatch, "vector length differs from frame dimension");
  std::vector<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == T(0)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == T(0)) continue;
      T w = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += w * (braces ? f.brace(i, j, k) : f.structure(i, j, k));
    }
  }
  return out;
}

}  // namespace detail

/// Lie bracket of two constant-component vectors.
template <Field T>
std::vector<T> bracket(const LieFrame<T>& f, std::span<const T> x, std::span<const T> y) {
  return detail::contract_bilinear(f, x, y, false);
}

/// Symmetric braces {x,y} = ∇_x y + ∇_y x.
template <Field T>
std::vector<T> braces(const LieFrame<T>& f, std::span<const T> x, std::span<const T> y) {
  if (!f.left_invariant()) throw Error(ErrorKind::precondition_violation, "braces need a left-invariant frame");
  return detail::contract_bilinear(f, x, y, true);
}

/// ∇_x y for constant-component vectors.
template <Field T>
std::vector<T> covariant(const LieFrame<T>& f, std::span<const T> x, std::span<const T> y) {
  const std::size_t n = f.n();
  if (x.size() != n || y.size() != n) throw Error(ErrorKind::dimension_mismatch, "vector length differs from frame dimension");
  std::vector<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T w = x[i] * y[j];
      if (w == T(0)) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += w * f.gamma(i, j, k);
    }
  return out;
}

/// (∇_{X_i} J) X_j = ∇_i(J X_j) - J(∇_i X_j), stored as S(i,j,k).
template <Field T>
Tensor12<T> nabla_endo(const LieFrame<T>& f, const Endo<T>& j_op) {
  require_same_frame(f, j_op.frame(), "nabla_endo");
  if (!f.left_invariant()) throw Error(ErrorKind::precondition_violation, "nabla_endo needs a left-invariant frame");
  const std::size_t n = f.n();
  Tensor12<T> out(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t p = 0; p < n; ++p) acc += j_op(p, j) * f.gamma(i, p, k) - j_op(k, p) * f.gamma(i, j, p);
        out(i, j, k) = acc;
      }
  return out;
}

/// Basis vector X_i as a component vector.
template <Field T>
std::vector<T> basis_vector(std::size_t n, std::size_t i) {
  std::vector<T> e(n, T(0));
  e.at(i) = T(1);
  return e;
}

/// Rebuilds a frame on another backend (Jacobi and metric checks are rerun).
template <Field To, Field From>
LieFrame<To> convert_frame(const LieFrame<From>& f) {
  std::vector<To> c;
  c.reserve(f.structure_constants().size());
  for (const auto& x : f.structure_constants()) c.push_back(convert_scalar<To>(x));
  return build_lie_frame<To>(f.n(), std::move(c), convert_matrix<To>(f.metric()));
}

}  // namespace nij
