#pragma once

// Nijenhuis tensors [J,K], associated Nijenhuis tensors {J,K} and the
// Frölicher-Nijenhuis compositions S⋏L, L⋏S on a left-invariant frame.
//
// Both pair tensors share one shape over a bilinear table P (the bracket
// for [J,K], the symmetric braces for {J,K}):
//
//   2 T(X,Y) = (JK+KJ) P(X,Y) + P(JX,KY) + P(KX,JY)
//              - J P(KX,Y) - J P(X,KY) - K P(JX,Y) - K P(X,JY)
//
// The stored tensor is T itself, so T(J,J) reduces to
// P(JX,JY) + J² P(X,Y) - J P(JX,Y) - J P(X,JY).

#include <cstddef>

#include "nij/lie_frame.hpp"
#include "nij/residual.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// (S⋏L)(X,Y) = S(LX,Y) + S(X,LY)
template <Field T>
Tensor12<T> barwedge_right(const Tensor12<T>& s, const Endo<T>& l) {
  require_same_frame(s.frame(), l.frame(), "barwedge_right");
  const std::size_t n = s.n();
  Tensor12<T> out(s.frame());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p) {
        const T& li = l(p, i);
        const T& lj = l(p, j);
        if (li == T(0) && lj == T(0)) continue;
        for (std::size_t k = 0; k < n; ++k) out(i, j, k) += s(p, j, k) * li + s(i, p, k) * lj;
      }
  return out;
}

/// (L⋏S)(X,Y) = L(S(X,Y))
template <Field T>
Tensor12<T> barwedge_left(const Endo<T>& l, const Tensor12<T>& s) {
  require_same_frame(s.frame(), l.frame(), "barwedge_left");
  const std::size_t n = s.n();
  Tensor12<T> out(s.frame());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t p = 0; p < n; ++p) acc += l(k, p) * s(i, j, p);
        out(i, j, k) = acc;
      }
  return out;
}

/// R(X,Y) = S(LX, MY)
template <Field T>
Tensor12<T> compose_arguments(const Tensor12<T>& s, const Endo<T>& l, const Endo<T>& m) {
  require_same_frame(s.frame(), l.frame(), "compose_arguments");
  require_same_frame(s.frame(), m.frame(), "compose_arguments");
  const std::size_t n = s.n();
  Tensor12<T> partial(s.frame());  // S(X_a, M X_j)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t b = 0; b < n; ++b) {
        const T& mb = m(b, j);
        if (mb == T(0)) continue;
        for (std::size_t k = 0; k < n; ++k) partial(a, j, k) += s(a, b, k) * mb;
      }
  Tensor12<T> out(s.frame());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      const T& la = l(a, i);
      if (la == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) out(i, j, k) += la * partial(a, j, k);
    }
  return out;
}

namespace detail {

template <Field T>
Tensor12<T> pair_tensor(const Tensor12<T>& table, const Endo<T>& j, const Endo<T>& k) {
  require_same_frame(table.frame(), j.frame(), "pair tensor");
  require_same_frame(table.frame(), k.frame(), "pair tensor");
  Tensor12<T> twice = barwedge_left(j * k + k * j, table);
  twice += compose_arguments(table, j, k);
  twice += compose_arguments(table, k, j);
  twice -= barwedge_left(j, barwedge_right(table, k));
  twice -= barwedge_left(k, barwedge_right(table, j));
  return (T(1) / T(2)) * std::move(twice);
}

}  // namespace detail

/// Nijenhuis tensor [J,K]; antisymmetric in its arguments, symmetric in (J,K).
template <Field T>
Tensor12<T> nijenhuis_pair(const Endo<T>& j, const Endo<T>& k) {
  return detail::pair_tensor(bracket_tensor(j.frame()), j, k);
}

/// Associated Nijenhuis tensor {J,K}; symmetric in its arguments and in (J,K).
template <Field T>
Tensor12<T> assoc_nijenhuis_pair(const Endo<T>& j, const Endo<T>& k) {
  if (!j.frame().left_invariant()) throw Error(ErrorKind::precondition_violation, "braces need a left-invariant frame");
  return detail::pair_tensor(braces_tensor(j.frame()), j, k);
}

/// Scale for float zero tests of a pair tensor: |P|·(1+|J|)·(1+|K|).
template <Field T>
double pair_scale(const Endo<T>& j, const Endo<T>& k, bool braces) {
  const auto table = braces ? braces_tensor(j.frame()) : bracket_tensor(j.frame());
  return table.max_abs() * (1.0 + j.matrix().max_abs()) * (1.0 + k.matrix().max_abs());
}

/// {J,KL} + {K,JL} = {J,K}⋏L + J⋏{K,L} + K⋏{J,L}
template <Field T>
ResidualRow<T> verify_lemma_2_1(const Endo<T>& j, const Endo<T>& k, const Endo<T>& l) {
  require_same_frame(j.frame(), k.frame(), "verify_lemma_2_1");
  require_same_frame(j.frame(), l.frame(), "verify_lemma_2_1");
  Combination<T, Type12Tag> c(j.frame());
  c.add(assoc_nijenhuis_pair(j, k * l));
  c.add(assoc_nijenhuis_pair(k, j * l));
  c.sub(barwedge_right(assoc_nijenhuis_pair(j, k), l));
  c.sub(barwedge_left(j, assoc_nijenhuis_pair(k, l)));
  c.sub(barwedge_left(k, assoc_nijenhuis_pair(j, l)));
  return c.row("{J,KL} + {K,JL} = {J,K}~L + J~{K,L} + K~{J,L}");
}

}  // namespace nij
