#pragma once

// Independent oracles for the test suites. Nothing here goes through the
// barwedge formulas or the Koszul formula used by the library.

#include <cstddef>
#include <vector>

#include "nij/nij.hpp"

namespace nij::test {

template <class T>
std::vector<T> add(std::vector<T> a, const std::vector<T>& b, const T& s = T(1)) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

/// [JX,JY] + J²[X,Y] − J[JX,Y] − J[X,JY], evaluated on basis vectors.
template <Field T>
Tensor12<T> nijenhuis_direct(const Endo<T>& j) {
  const auto& f = j.frame();
  const std::size_t n = f.n();
  Tensor12<T> out(f);
  const Endo<T> j2 = j * j;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto x = basis_vector<T>(n, a), y = basis_vector<T>(n, b);
      const auto jx = j.apply(x), jy = j.apply(y);
      auto v = bracket(f, std::span<const T>(jx), std::span<const T>(jy));
      v = add(v, j2.apply(bracket(f, std::span<const T>(x), std::span<const T>(y))));
      v = add(v, j.apply(bracket(f, std::span<const T>(jx), std::span<const T>(y))), T(-1));
      v = add(v, j.apply(bracket(f, std::span<const T>(x), std::span<const T>(jy))), T(-1));
      for (std::size_t k = 0; k < n; ++k) out(a, b, k) = v[k];
    }
  return out;
}

/// ½[(JK+KJ){X,Y} + {JX,KY} − J{KX,Y} − J{X,KY} + {KX,JY} − K{JX,Y} − K{X,JY}]
/// from braces of vectors.
template <Field T>
Tensor12<T> assoc_direct(const Endo<T>& j, const Endo<T>& k) {
  const auto& f = j.frame();
  const std::size_t n = f.n();
  Tensor12<T> out(f);
  const Endo<T> jk = j * k + k * j;
  auto br = [&](const std::vector<T>& x, const std::vector<T>& y) {
    return braces(f, std::span<const T>(x), std::span<const T>(y));
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto x = basis_vector<T>(n, a), y = basis_vector<T>(n, b);
      const auto jx = j.apply(x), jy = j.apply(y), kx = k.apply(x), ky = k.apply(y);
      auto v = jk.apply(br(x, y));
      v = add(v, br(jx, ky));
      v = add(v, br(kx, jy));
      v = add(v, j.apply(br(kx, y)), T(-1));
      v = add(v, j.apply(br(x, ky)), T(-1));
      v = add(v, k.apply(br(jx, y)), T(-1));
      v = add(v, k.apply(br(x, jy)), T(-1));
      for (std::size_t c = 0; c < n; ++c) out(a, b, c) = v[c] / T(2);
    }
  return out;
}

/// (∇_X J)Y = ∇_X(JY) − J∇_X Y on basis vectors.
template <Field T>
Tensor12<T> nabla_direct(const Endo<T>& j) {
  const auto& f = j.frame();
  const std::size_t n = f.n();
  Tensor12<T> out(f);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto x = basis_vector<T>(n, a), y = basis_vector<T>(n, b);
      const auto jy = j.apply(y);
      auto v = covariant(f, std::span<const T>(x), std::span<const T>(jy));
      v = add(v, j.apply(covariant(f, std::span<const T>(x), std::span<const T>(y))), T(-1));
      for (std::size_t c = 0; c < n; ++c) out(a, b, c) = v[c];
    }
  return out;
}

/// Levi-Civita coefficients as the unique solution of the linear system
///   Γ^k_ij − Γ^k_ji = C^k_ij,   Σ_p Γ^p_ij g_pk + Γ^p_ik g_jp = 0.
/// Returns an empty vector if the system is not uniquely solvable.
template <Field T>
std::vector<T> levi_civita_by_solve(std::size_t n, const std::vector<T>& c, const Matrix<T>& g) {
  const std::size_t unknowns = n * n * n;
  auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  Matrix<T> a(2 * unknowns, unknowns);
  std::vector<T> b(2 * unknowns, T(0));
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k, ++row) {
        a(row, at(i, j, k)) += T(1);
        a(row, at(j, i, k)) -= T(1);
        b[row] = c[at(i, j, k)];
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k, ++row)
        for (std::size_t p = 0; p < n; ++p) {
          a(row, at(i, j, p)) += g(p, k);
          a(row, at(i, k, p)) += g(j, p);
        }
  auto sol = solve_affine(a, b);
  if (!sol.consistent() || sol.dimension() != 0) return {};
  return sol.particular;
}

/// Max |torsion| and max |∇g| of the frame's connection coefficients.
template <Field T>
std::pair<T, T> levi_civita_defects(const LieFrame<T>& f) {
  const std::size_t n = f.n();
  const auto& g = f.metric();
  T torsion(0), compat(0);
  auto upd = [](T& m, const T& v) {
    const T a = ScalarTraits<T>::abs(v);
    if (a > m) m = a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        upd(torsion, f.gamma(i, j, k) - f.gamma(j, i, k) - f.structure(i, j, k));
        T s(0);
        for (std::size_t p = 0; p < n; ++p) s += f.gamma(i, j, p) * g(p, k) + f.gamma(i, k, p) * g(j, p);
        upd(compat, s);
      }
  return {torsion, compat};
}

template <Field T>
HNStructure<T> example(int l1, int l2, int l3, int l4) {
  return example_g4<T>(ExampleParams<T>{{T(l1), T(l2), T(l3), T(l4)}});
}

}  // namespace nij::test
