#pragma once

// The 4-dimensional example family and randomized test instances.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "nij/error.hpp"
#include "nij/hn_structure.hpp"
#include "nij/lie_frame.hpp"
#include "nij/linalg.hpp"

namespace nij {

using Rng = std::mt19937_64;

/// Deterministic generator for (seed, stream); distinct streams are independent.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline int draw_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
struct ExampleParams {
  std::array<T, 4> lambda;
};

/// Brackets of the example family, 0-based, each listed once.
template <Field T>
std::vector<BracketEntry<T>> example_brackets(const std::array<T, 4>& l) {
  const T z(0);
  return {
      {0, 2, {z, l[1], z, l[3]}},   // [X1,X3] = λ2 X2 + λ4 X4
      {1, 3, {l[0], z, l[2], z}},   // [X2,X4] = λ1 X1 + λ3 X3
      {2, 1, {l[1], z, z, l[2]}},   // [X3,X2] = λ2 X1 + λ3 X4
      {3, 2, {l[3], -l[2], z, z}},  // [X4,X3] = λ4 X1 - λ3 X2
      {3, 0, {z, l[0], l[3], z}},   // [X4,X1] = λ1 X2 + λ4 X3
      {0, 1, {z, z, l[1], -l[0]}},  // [X1,X2] = λ2 X3 - λ1 X4
  };
}

/// Block-diagonal quaternionic triple on R^{4m}; the m = 1 block is
///   J1: X1->X2, X2->-X1, X3->-X4, X4->X3
///   J2: X1->X3, X2->X4,  X3->-X1, X4->-X2
///   J3: X1->-X4, X2->X3, X3->-X2, X4->X1
template <Field T>
std::array<Matrix<T>, 3> standard_quaternion(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::precondition_violation, "quaternionic dimension must be >= 1");
  // image[alpha][j] = (target index, sign)
  constexpr std::array<std::array<std::pair<int, int>, 4>, 3> image{{
      {{{1, 1}, {0, -1}, {3, -1}, {2, 1}}},
      {{{2, 1}, {3, 1}, {0, -1}, {1, -1}}},
      {{{3, -1}, {2, 1}, {1, -1}, {0, 1}}},
  }};
  std::array<Matrix<T>, 3> out{Matrix<T>(4 * m, 4 * m), Matrix<T>(4 * m, 4 * m), Matrix<T>(4 * m, 4 * m)};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t blk = 0; blk < m; ++blk)
      for (std::size_t j = 0; j < 4; ++j) {
        auto [k, s] = image[a][j];
        out[a](4 * blk + k, 4 * blk + j) = T(s);
      }
  return out;
}

/// The example Lie group: six brackets in λ, g = diag(1,1,-1,-1), standard triple.
template <Field T>
HNStructure<T> example_g4(const ExampleParams<T>& p) {
  if (std::all_of(p.lambda.begin(), p.lambda.end(), [](const T& x) { return x == T(0); }))
    throw Error(ErrorKind::zero_lambda, "(λ1,λ2,λ3,λ4) must not all vanish");
  const auto brackets = example_brackets(p.lambda);
  auto c = structure_from_brackets<T>(4, brackets);
  const std::array<T, 4> d{T(1), T(1), T(-1), T(-1)};
  auto frame = build_lie_frame<T>(4, std::move(c), Matrix<T>::diagonal(d));
  auto q = standard_quaternion<T>(1);
  return build_hn(frame, Endo<T>(frame, q[0]), Endo<T>(frame, q[1]), Endo<T>(frame, q[2]));
}

/// Four-dimensional building blocks for random instances.
enum class AlgebraKind { abelian, example_family, heisenberg, unitary, affine_pair };

inline constexpr std::array<AlgebraKind, 5> kAlgebraKinds{AlgebraKind::abelian, AlgebraKind::example_family,
                                                          AlgebraKind::heisenberg, AlgebraKind::unitary,
                                                          AlgebraKind::affine_pair};

inline std::string_view to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::abelian: return "abelian";
    case AlgebraKind::example_family: return "example-family";
    case AlgebraKind::heisenberg: return "heisenberg";
    case AlgebraKind::unitary: return "u2";
    case AlgebraKind::affine_pair: return "aff-pair";
  }
  return "?";
}

template <Field T>
std::vector<BracketEntry<T>> block_brackets(AlgebraKind kind, Rng& rng) {
  const T z(0), o(1);
  switch (kind) {
    case AlgebraKind::abelian:
      return {};
    case AlgebraKind::example_family: {
      std::array<T, 4> l;
      do {
        for (auto& x : l) x = T(draw_int(rng, -3, 3));
      } while (std::all_of(l.begin(), l.end(), [](const T& x) { return x == T(0); }));
      return example_brackets(l);
    }
    case AlgebraKind::heisenberg:
      return {{0, 1, {z, z, o, z}}};
    case AlgebraKind::unitary:
      return {{0, 1, {z, z, o, z}}, {1, 2, {o, z, z, z}}, {2, 0, {z, o, z, z}}};
    case AlgebraKind::affine_pair:
      return {{0, 1, {z, o, z, z}}, {2, 3, {z, z, z, o}}};
  }
  return {};
}

/// Structure constants of a direct sum of m four-dimensional blocks.
template <Field T>
std::vector<T> block_sum_structure(const std::vector<AlgebraKind>& kinds, Rng& rng) {
  const std::size_t n = 4 * kinds.size();
  std::vector<BracketEntry<T>> all;
  for (std::size_t b = 0; b < kinds.size(); ++b)
    for (auto e : block_brackets<T>(kinds[b], rng)) {
      BracketEntry<T> shifted{e.i + 4 * b, e.j + 4 * b, std::vector<T>(n, T(0))};
      for (std::size_t k = 0; k < 4; ++k) shifted.coeffs[4 * b + k] = e.coeffs[k];
      all.push_back(std::move(shifted));
    }
  return structure_from_brackets<T>(n, all);
}

/// Structure constants after the component change x' = B x:
/// [x,y]' = B [B^{-1}x', B^{-1}y'].
template <Field T>
std::vector<T> change_basis(const std::vector<T>& c, std::size_t n, const Matrix<T>& b) {
  const Matrix<T> bi = mat_inverse(b);
  auto C = [&](std::size_t i, std::size_t j, std::size_t k) -> const T& { return c[(i * n + j) * n + k]; };
  // step 1: D^r_{a q} = Σ_p C^r_{pq} Binv(p,a)
  std::vector<T> d(n * n * n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t p = 0; p < n; ++p) {
      if (bi(p, a) == T(0)) continue;
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r) d[(a * n + q) * n + r] += C(p, q, r) * bi(p, a);
    }
  std::vector<T> e(n * n * n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = 0; bb < n; ++bb)
      for (std::size_t q = 0; q < n; ++q) {
        if (bi(q, bb) == T(0)) continue;
        for (std::size_t r = 0; r < n; ++r) e[(a * n + bb) * n + r] += d[(a * n + q) * n + r] * bi(q, bb);
      }
  std::vector<T> out(n * n * n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t bb = 0; bb < n; ++bb)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t r = 0; r < n; ++r) acc += b(k, r) * e[(a * n + bb) * n + r];
        out[(a * n + bb) * n + k] = acc;
      }
  return out;
}

template <Field T>
Matrix<T> random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range = 3) {
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = T(draw_int(rng, -range, range));
  return m;
}

template <Field T>
Matrix<T> random_symmetric(Rng& rng, std::size_t n, int range = 3) {
  Matrix<T> m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) m(r, c) = m(c, r) = T(draw_int(rng, -range, range));
  return m;
}

template <Field T>
std::optional<Matrix<T>> random_invertible(Rng& rng, std::size_t n, int range = 3, int attempts = 100) {
  for (int t = 0; t < attempts; ++t) {
    auto m = random_int_matrix<T>(rng, n, n, range);
    if (rank(m) == n) return m;
  }
  return std::nullopt;
}

template <Field T>
Endo<T> random_endo(Rng& rng, const LieFrame<T>& f, int range = 3) {
  return Endo<T>(f, random_int_matrix<T>(rng, f.n(), f.n(), range));
}

template <Field T>
Tensor12<T> random_tensor12(Rng& rng, const LieFrame<T>& f, int range = 3) {
  Tensor12<T> s(f);
  const std::size_t n = f.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) s(i, j, k) = T(draw_int(rng, -range, range));
  return s;
}

/// λ with entries p/q, p in [-5,5], q in [1,4], not all zero.
template <Field T>
ExampleParams<T> random_lambda(Rng& rng) {
  ExampleParams<T> p;
  do {
    for (auto& x : p.lambda) x = T(draw_int(rng, -5, 5)) / T(draw_int(rng, 1, 4));
  } while (std::all_of(p.lambda.begin(), p.lambda.end(), [](const T& x) { return x == T(0); }));
  return p;
}

struct RandomHnOptions {
  std::optional<AlgebraKind> algebra;  // same kind for every block; random per block when unset
  std::optional<bool> aligned;         // algebra basis change equals the J conjugation
};

/// Records how a random instance was drawn.
struct RandomHnInfo {
  std::uint64_t seed = 0;
  std::size_t m = 1;
  std::vector<AlgebraKind> blocks;
  bool aligned = false;
  int rejections = 0;
};

/// Random HN structure in dimension 4m, fully determined by (seed, m, options).
///   J_α = A J_α^std A^{-1}
///   g   = 1/4 (h + J1ᵀ h J1 - J2ᵀ h J2 - J3ᵀ h J3)   (compatible for any symmetric h)
/// Lie algebra: a block sum from a curated list, moved to a new basis either by A
/// (aligned) or by an independent random matrix.
template <Field T>
HNStructure<T> random_hn(std::uint64_t seed, std::size_t m, const RandomHnOptions& opts = {},
                         RandomHnInfo* info = nullptr) {
  if (m == 0) throw Error(ErrorKind::precondition_violation, "quaternionic dimension must be >= 1");
  const std::size_t n = 4 * m;
  Rng rng = make_rng(seed, m);
  const auto std_j = standard_quaternion<T>(m);
  const T quarter = T(1) / T(4);

  RandomHnInfo local{seed, m, {}, false, 0};
  for (int attempt = 0; attempt < 100; ++attempt, ++local.rejections) {
    auto a = random_invertible<T>(rng, n);
    if (!a) continue;
    const Matrix<T> a_inv = mat_inverse(*a);
    std::array<Matrix<T>, 3> j;
    for (std::size_t k = 0; k < 3; ++k) j[k] = *a * std_j[k] * a_inv;

    const Matrix<T> hsym = random_symmetric<T>(rng, n);
    const Matrix<T> g = quarter * (hsym + j[0].transpose() * hsym * j[0] - j[1].transpose() * hsym * j[1] -
                                   j[2].transpose() * hsym * j[2]);
    if (rank(g) != n) continue;
    const auto sig = signature(g);
    if (sig.positive != 2 * m || sig.negative != 2 * m) continue;

    local.blocks.clear();
    for (std::size_t b = 0; b < m; ++b)
      local.blocks.push_back(opts.algebra ? *opts.algebra : kAlgebraKinds[draw_int(rng, 0, kAlgebraKinds.size() - 1)]);
    local.aligned = opts.aligned ? *opts.aligned : draw_int(rng, 0, 1) == 1;
    const auto c0 = block_sum_structure<T>(local.blocks, rng);
    Matrix<T> basis = *a;
    if (!local.aligned) {
      auto b = random_invertible<T>(rng, n);
      if (!b) continue;
      basis = *b;
    }
    auto frame = build_lie_frame<T>(n, change_basis(c0, n, basis), g);
    auto h = build_hn(frame, Endo<T>(frame, j[0]), Endo<T>(frame, j[1]), Endo<T>(frame, j[2]));
    if (info) *info = local;
    return h;
  }
  throw Error(ErrorKind::generator_failure, "random_hn: 100 rejections for seed " + std::to_string(seed));
}

/// Random Lie frame of dimension 4m with an arbitrary nondegenerate symmetric metric.
template <Field T>
LieFrame<T> random_lie_frame(std::uint64_t seed, std::size_t m) {
  const std::size_t n = 4 * m;
  Rng rng = make_rng(seed, 1000 + m);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<AlgebraKind> kinds;
    for (std::size_t b = 0; b < m; ++b) kinds.push_back(kAlgebraKinds[draw_int(rng, 0, kAlgebraKinds.size() - 1)]);
    const auto c0 = block_sum_structure<T>(kinds, rng);
    auto basis = random_invertible<T>(rng, n);
    const Matrix<T> g = random_symmetric<T>(rng, n);
    if (!basis || rank(g) != n) continue;
    return build_lie_frame<T>(n, change_basis(c0, n, *basis), g);
  }
  throw Error(ErrorKind::generator_failure, "random_lie_frame: 100 rejections for seed " + std::to_string(seed));
}

}  // namespace nij
