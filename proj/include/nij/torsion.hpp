#pragma once

// Metric connections with totally skew-symmetric torsion preserving a chosen
// subset of (J1, J2, J3). The connection is parameterized as
//
//   ∇'_x y = ∇_x y + 1/2 T(x,y,·)^♯
//
// with T a 3-form, so the torsion of ∇' is T(x,y,·)^♯ itself and ∇'g = 0
// automatically. Preserving J_α is linear in the C(n,3) independent
// components of T; existence and the solution-set dimension come from
// solving that system.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nij/error.hpp"
#include "nij/hn_structure.hpp"
#include "nij/linalg.hpp"
#include "nij/residual.hpp"

namespace nij {

template <class T>
struct TorsionProblem {
  HNStructure<T> structure;
  std::vector<int> preserve;  // sorted, unique subset of {1,2,3}

  TorsionProblem(HNStructure<T> h, std::vector<int> alphas) : structure(std::move(h)), preserve(std::move(alphas)) {
    std::sort(preserve.begin(), preserve.end());
    preserve.erase(std::unique(preserve.begin(), preserve.end()), preserve.end());
    if (preserve.empty()) throw Error(ErrorKind::precondition_violation, "preserve set must be nonempty");
    for (int a : preserve)
      if (a < 1 || a > 3) throw Error(ErrorKind::precondition_violation, "preserve entries must be 1, 2 or 3");
  }
};

enum class TorsionStatus { none, unique, family };

inline std::string_view to_string(TorsionStatus s) {
  switch (s) {
    case TorsionStatus::none: return "none";
    case TorsionStatus::unique: return "unique";
    case TorsionStatus::family: return "family";
  }
  return "none";
}

template <class T>
struct TorsionResult {
  TorsionStatus status = TorsionStatus::none;
  std::optional<Tensor03<T>> torsion;  // a particular solution when status != none
  std::size_t family_dim = 0;
  std::vector<Tensor03<T>> family_basis;
  std::size_t equations = 0;
  std::size_t unknowns = 0;

  bool exists() const { return status != TorsionStatus::none; }
};

namespace detail {

/// Maps ordered index triples to (unknown slot, sign) for the a<b<c parameterization.
class ThreeFormIndex {
 public:
  explicit ThreeFormIndex(std::size_t n) : n_(n) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) triples_.push_back({a, b, c});
  }

  std::size_t size() const { return triples_.size(); }
  const std::array<std::size_t, 3>& triple(std::size_t slot) const { return triples_[slot]; }

  /// Slot and sign of T(i,j,k), or nullopt when two indices coincide.
  std::optional<std::pair<std::size_t, int>> locate(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k) return std::nullopt;
    std::array<std::size_t, 3> v{i, j, k};
    int sign = 1;
    // bubble sort, tracking parity
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < 2 - pass; ++p)
        if (v[p] > v[p + 1]) {
          std::swap(v[p], v[p + 1]);
          sign = -sign;
        }
    // slot of (a,b,c) in lexicographic order of combinations
    std::size_t slot = 0;
    const std::size_t a = v[0], b = v[1], c = v[2];
    for (std::size_t x = 0; x < a; ++x) slot += (n_ - 1 - x) * (n_ - 2 - x) / 2;
    for (std::size_t y = a + 1; y < b; ++y) slot += n_ - 1 - y;
    slot += c - b - 1;
    return std::pair{slot, sign};
  }

 private:
  std::size_t n_;
  std::vector<std::array<std::size_t, 3>> triples_;
};

template <class T>
Tensor03<T> expand_three_form(const LieFrame<T>& f, const ThreeFormIndex& idx, const std::vector<T>& values) {
  Tensor03<T> t(f);
  for (std::size_t s = 0; s < idx.size(); ++s) {
    auto [a, b, c] = idx.triple(s);
    const T& v = values[s];
    t(a, b, c) = v;
    t(b, c, a) = v;
    t(c, a, b) = v;
    t(b, a, c) = -v;
    t(a, c, b) = -v;
    t(c, b, a) = -v;
  }
  return t;
}

}  // namespace detail

/// Decides whether a connection with totally skew-symmetric torsion
/// preserving g and every J_α in `preserve` exists. One equation per
/// α, basis pair (i,j) and output component k:
///   (∇_{X_i} J_α) X_j + 1/2 [ T(X_i, J_α X_j, ·)^♯ - J_α T(X_i, X_j, ·)^♯ ] = 0
template <Field T>
TorsionResult<T> solve_skew_torsion(const TorsionProblem<T>& problem) {
  const auto& h = problem.structure;
  const auto& f = h.frame();
  const std::size_t n = f.n();
  const detail::ThreeFormIndex idx(n);
  const auto& gi = f.metric_inverse();
  const T half = T(1) / T(2);

  std::size_t rows = problem.preserve.size() * n * n * n;
  Matrix<T> a(rows, idx.size());
  std::vector<T> b(rows, T(0));
  std::size_t row = 0;
  for (int alpha : problem.preserve) {
    const auto& j = h.j(alpha);
    const Matrix<T> j_ginv = j.matrix() * gi;
    const auto dj = nabla_endo(f, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t jj = 0; jj < n; ++jj)
        for (std::size_t k = 0; k < n; ++k, ++row) {
          b[row] = -dj(i, jj, k);
          for (std::size_t p = 0; p < n; ++p) {
            const T& jp = j(p, jj);
            if (jp == T(0)) continue;
            for (std::size_t l = 0; l < n; ++l) {
              if (gi(k, l) == T(0)) continue;
              if (auto loc = idx.locate(i, p, l)) a(row, loc->first) += T(loc->second) * half * jp * gi(k, l);
            }
          }
          for (std::size_t l = 0; l < n; ++l) {
            if (j_ginv(k, l) == T(0)) continue;
            if (auto loc = idx.locate(i, jj, l)) a(row, loc->first) -= T(loc->second) * half * j_ginv(k, l);
          }
        }
  }

  TorsionResult<T> out;
  out.equations = rows;
  out.unknowns = idx.size();
  const auto sol = solve_affine(a, b);
  if (!sol.consistent()) return out;
  out.family_dim = sol.dimension();
  out.status = out.family_dim == 0 ? TorsionStatus::unique : TorsionStatus::family;
  out.torsion = detail::expand_three_form(f, idx, sol.particular);
  for (const auto& v : sol.nullspace_basis) out.family_basis.push_back(detail::expand_three_form(f, idx, v));
  return out;
}

/// Checks a candidate torsion 3-form by building ∇' directly:
/// (a) total antisymmetry of T, (b) ∇'g = 0, (c) ∇'J_α = 0 for α in
/// `preserve`, (d) ∇'_x y - ∇'_y x - [x,y] lowered equals T.
template <Field T>
std::vector<ResidualRow<T>> verify_connection(const HNStructure<T>& h, const Tensor03<T>& t,
                                              const std::vector<int>& preserve) {
  const auto& f = h.frame();
  require_same_frame(f, t.frame(), "verify_connection");
  const std::size_t n = f.n();
  const auto& g = f.metric();
  const auto& gi = f.metric_inverse();
  const T half = T(1) / T(2);

  std::vector<ResidualRow<T>> rows;
  auto skew = antisymmetry_defect(t);
  rows.push_back(make_row("T totally antisymmetric", skew, t.max_abs()));
  if (!rows.back().zero) throw Error(ErrorKind::precondition_violation, "torsion candidate is not a 3-form");

  // Γ'(i,j,k) = Γ(i,j,k) + 1/2 g^{kl} T(i,j,l)
  Tensor12<T> conn(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc = f.gamma(i, j, k);
        for (std::size_t l = 0; l < n; ++l) acc += half * gi(k, l) * t(i, j, l);
        conn(i, j, k) = acc;
      }
  const double cmax = conn.max_abs();

  Tensor03<T> metric_defect(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t p = 0; p < n; ++p) acc += g(p, k) * conn(i, j, p) + g(j, p) * conn(i, k, p);
        metric_defect(i, j, k) = acc;
      }
  rows.push_back(make_row("nabla' g = 0", metric_defect, g.max_abs() * cmax));

  for (int alpha : preserve) {
    const auto& jm = h.j(alpha);
    Tensor12<T> dj(f);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          T acc(0);
          for (std::size_t p = 0; p < n; ++p) acc += jm(p, j) * conn(i, p, k) - jm(k, p) * conn(i, j, p);
          dj(i, j, k) = acc;
        }
    rows.push_back(make_row("nabla' J" + std::to_string(alpha) + " = 0", dj, (1.0 + jm.matrix().max_abs()) * cmax));
  }

  Tensor03<T> torsion_defect(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t l = 0; l < n; ++l) acc += g(k, l) * (conn(i, j, l) - conn(j, i, l) - f.structure(i, j, l));
        torsion_defect(i, j, k) = acc - t(i, j, k);
      }
  rows.push_back(make_row("torsion(nabla') = T", torsion_defect, g.max_abs() * cmax + t.max_abs()));
  return rows;
}

}  // namespace nij
