#pragma once

// Dense elimination over either backend: affine solution sets, rank,
// inverse and the signature of a symmetric matrix by congruence.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <optional>
#include <utility>
#include <vector>

#include "nij/error.hpp"
#include "nij/matrix.hpp"
#include "nij/scalar.hpp"

namespace nij {

enum class SolutionKind { empty, affine };

template <class T>
struct SolutionSet {
  SolutionKind kind = SolutionKind::empty;
  std::vector<T> particular;                 // set iff kind == affine
  std::vector<std::vector<T>> nullspace_basis;

  bool consistent() const { return kind == SolutionKind::affine; }
  std::size_t dimension() const { return nullspace_basis.size(); }
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

namespace detail {

template <class T>
struct Echelon {
  Matrix<T> reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per leading row
};

// Exact path. Rows are scaled to primitive integer vectors and duplicates
// dropped; an echelon basis is then grown one row at a time with
// fraction-free updates, and only the basis is back-substituted over Q.
// Tall redundant systems stay cheap because no rational entry ever grows
// across the discarded rows.
inline Echelon<Rational> reduce_exact(const Matrix<Rational>& m, std::size_t pivot_cols) {
  using Row = std::vector<mpz_class>;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  auto make_primitive = [](Row& v) {
    mpz_class g = 0;
    for (const auto& x : v)
      if (sgn(x) != 0) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
      }
    if (sgn(g) == 0) return false;
    auto lead = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
    if (sgn(*lead) < 0) g = -g;
    if (g != 1)
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return true;
  };

  std::set<Row> seen;
  std::map<std::size_t, Row> basis;  // leading column -> row
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class den = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den_mpz_t());
    Row v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = m(r, c).get_num() * (den / m(r, c).get_den());
    if (!make_primitive(v) || !seen.insert(v).second) continue;

    bool alive = true;
    std::size_t updates = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(v[c]) == 0) continue;
      auto it = basis.find(c);
      if (it == basis.end()) break;
      const Row& b = it->second;
      const mpz_class p = b[c];
      const mpz_class f = v[c];
      for (std::size_t k = c; k < cols; ++k) v[k] = p * v[k] - f * b[k];
      if (++updates % 8 == 0 && !make_primitive(v)) {
        alive = false;
        break;
      }
    }
    if (!alive || !make_primitive(v)) continue;
    std::size_t lead = 0;
    while (sgn(v[lead]) == 0) ++lead;
    basis.emplace(lead, std::move(v));
  }

  Matrix<Rational> out(rows, cols);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (const auto& [lead, row] : basis) {
    if (lead >= pivot_cols) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      out(r, c) = Rational(row[c], row[lead]);
      out(r, c).canonicalize();
    }
    pivots.push_back(lead);
    ++r;
  }
  for (std::size_t i = pivots.size(); i-- > 0;) {
    const std::size_t c = pivots[i];
    for (std::size_t up = 0; up < i; ++up) {
      if (sgn(out(up, c)) == 0) continue;
      const Rational f = out(up, c);
      for (std::size_t k = c; k < cols; ++k)
        if (sgn(out(i, k)) != 0) out(up, k) -= f * out(i, k);
    }
  }
  for (const auto& [lead, row] : basis) {
    if (lead < pivot_cols) continue;
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = Rational(row[c]);
    ++r;
  }
  return {std::move(out), std::move(pivots)};
}

// Gauss-Jordan on the first `pivot_cols` columns. The rational path pivots on
// the first nonzero entry; the float path uses scaled partial pivoting and
// treats pivots below the scaled tolerance as zero.
template <Field T>
Echelon<T> reduce(Matrix<T> m, std::size_t pivot_cols) {
  if constexpr (std::same_as<T, Rational>) return reduce_exact(m, pivot_cols);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::vector<double> row_scale;
  double threshold = 0.0;
  if constexpr (!ScalarTraits<T>::exact) {
    double global = 0.0;
    row_scale.assign(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < pivot_cols; ++c) row_scale[r] = std::max(row_scale[r], magnitude(m(r, c)));
      global = std::max(global, row_scale[r]);
    }
    threshold = kFloatTolerance * (1.0 + global);
  }

  std::size_t lead = 0;
  for (std::size_t c = 0; c < pivot_cols && lead < rows; ++c) {
    std::optional<std::size_t> pivot;
    if constexpr (ScalarTraits<T>::exact) {
      for (std::size_t r = lead; r < rows; ++r)
        if (sgn(m(r, c)) != 0) {
          pivot = r;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t r = lead; r < rows; ++r) {
        double a = magnitude(m(r, c));
        if (a <= threshold) continue;
        double rel = a / (row_scale[r] > 0.0 ? row_scale[r] : 1.0);
        if (!pivot || rel > best) {
          best = rel;
          pivot = r;
        }
      }
    }
    if (!pivot) {
      if constexpr (!ScalarTraits<T>::exact)
        for (std::size_t r = lead; r < rows; ++r) m(r, c) = 0.0;
      continue;
    }
    if (*pivot != lead) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(*pivot, k), m(lead, k));
      if constexpr (!ScalarTraits<T>::exact) std::swap(row_scale[*pivot], row_scale[lead]);
    }
    const T inv = T(1) / m(lead, c);
    for (std::size_t k = c; k < cols; ++k) m(lead, k) *= inv;
    std::vector<std::size_t> nz;
    for (std::size_t k = c + 1; k < cols; ++k)
      if (m(lead, k) != T(0)) nz.push_back(k);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m(r, c) == T(0)) continue;
      const T f = m(r, c);
      for (std::size_t k : nz) m(r, k) -= f * m(lead, k);
      m(r, c) = T(0);
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace detail

template <Field T>
std::size_t rank(const Matrix<T>& a) {
  return detail::reduce(a, a.cols()).pivots.size();
}

/// Full affine solution set of `a * x = b`.
template <Field T>
SolutionSet<T> solve_affine(const Matrix<T>& a, const std::vector<T>& b) {
  if (a.rows() != b.size()) throw Error(ErrorKind::dimension_mismatch, "solve_affine: rows != length(b)");
  const std::size_t n = a.cols();
  Matrix<T> aug(a.rows(), n + 1);
  double b_scale = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
    b_scale = std::max(b_scale, magnitude(b[r]));
  }
  auto [red, pivots] = detail::reduce(std::move(aug), n);

  const double scale = std::max(a.max_abs(), b_scale);
  for (std::size_t r = pivots.size(); r < red.rows(); ++r)
    if (!is_zero(red(r, n), scale)) return {};

  SolutionSet<T> out;
  out.kind = SolutionKind::affine;
  out.particular.assign(n, T(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    out.particular[pivots[i]] = red(i, n);
    is_pivot[pivots[i]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(n, T(0));
    v[f] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, f);
    out.nullspace_basis.push_back(std::move(v));
  }
  return out;
}

/// Runtime-dispatched form; all entries of `a` and `b` must share one backend.
inline SolutionSet<Scalar> solve_affine(const Matrix<Scalar>& a, const std::vector<Scalar>& b) {
  auto run = [&]<class T>() {
    std::vector<T> bt;
    bt.reserve(b.size());
    for (const auto& x : b) bt.push_back(x.template get<T>());
    auto typed = solve_affine(typed_matrix<T>(a), bt);
    SolutionSet<Scalar> out;
    out.kind = typed.kind;
    for (auto& x : typed.particular) out.particular.emplace_back(x);
    for (auto& v : typed.nullspace_basis) {
      std::vector<Scalar> sv(v.begin(), v.end());
      out.nullspace_basis.push_back(std::move(sv));
    }
    return out;
  };
  Backend backend = !a.entries().empty() ? a.entries().front().backend()
                    : !b.empty()         ? b.front().backend()
                                         : Backend::rational;
  return backend == Backend::rational ? run.template operator()<Rational>() : run.template operator()<double>();
}

template <Field T>
Matrix<T> mat_inverse(const Matrix<T>& a) {
  if (!a.square()) throw Error(ErrorKind::dimension_mismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = T(1);
  }
  auto [red, pivots] = detail::reduce(std::move(aug), n);
  if (pivots.size() != n) throw Error(ErrorKind::singular_matrix, "matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
  return inv;
}

/// Inertia of a symmetric nondegenerate matrix via congruence diagonalization
/// (pivoted LDL^T, falling back to a 2x2 block when the remaining diagonal is zero).
template <Field T>
Signature signature(const Matrix<T>& g) {
  if (!g.square()) throw Error(ErrorKind::dimension_mismatch, "signature of a non-square matrix");
  if (!g.symmetric()) throw Error(ErrorKind::precondition_violation, "signature of a non-symmetric matrix");
  const std::size_t n = g.rows();
  const double scale = g.max_abs();
  Matrix<T> a = g;
  auto sym_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };
  auto nonzero = [&](const T& x) { return !is_zero(x, scale); };

  Signature sig;
  std::size_t k = 0;
  while (k < n) {
    std::optional<std::size_t> diag;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      if (!nonzero(a(i, i))) continue;
      if constexpr (ScalarTraits<T>::exact) {
        diag = i;
        break;
      } else if (magnitude(a(i, i)) > best) {
        best = magnitude(a(i, i));
        diag = i;
      }
    }
    if (diag) {
      sym_swap(*diag, k);
      const T d = a(k, k);
      (d > T(0) ? sig.positive : sig.negative)++;
      for (std::size_t r = k + 1; r < n; ++r) {
        if (a(r, k) == T(0)) continue;
        const T f = a(r, k) / d;
        for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
      }
      for (std::size_t r = k + 1; r < n; ++r) a(r, k) = a(k, r) = T(0);
      ++k;
      continue;
    }
    // all remaining diagonal entries vanish: pair k with an off-diagonal partner
    std::optional<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t i = k; i < n && !off; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (nonzero(a(i, j))) {
          off = {i, j};
          break;
        }
    if (!off) throw Error(ErrorKind::degenerate_metric, "symmetric matrix is degenerate");
    sym_swap(off->first, k);
    sym_swap(off->second, k + 1);
    // block [[0,b],[b,0]] has inertia (1,1); its inverse is [[0,1/b],[1/b,0]]
    const T b = a(k, k + 1);
    sig.positive++;
    sig.negative++;
    for (std::size_t r = k + 2; r < n; ++r)
      for (std::size_t c = k + 2; c < n; ++c) a(r, c) -= (a(r, k) * a(k + 1, c) + a(r, k + 1) * a(k, c)) / b;
    for (std::size_t r = k + 2; r < n; ++r) a(r, k) = a(k, r) = a(r, k + 1) = a(k + 1, r) = T(0);
    k += 2;
  }
  return sig;
}

}  // namespace nij
