#pragma once

// Almost hypercomplex structures (J1, J2, J3) with a metric of
// Hermitian-Norden type: g(x,y) = ε_α g(J_α x, J_α y), ε = (+1, -1, -1).

#include <algorithm>
#include <array>
#include <optional>
#include <cstddef>
#include <string>
#include <vector>

#include "nij/error.hpp"
#include "nij/lie_frame.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"
#include "nij/residual.hpp"
#include "nij/tensor.hpp"

namespace nij {

inline constexpr std::array<int, 3> kHnSigns{1, -1, -1};

template <class T>
class HNStructure {
 public:
  HNStructure(LieFrame<T> frame, std::array<Endo<T>, 3> j) : frame_(std::move(frame)), j_(std::move(j)) {}

  const LieFrame<T>& frame() const { return frame_; }
  std::size_t n() const { return frame_.n(); }
  std::size_t quaternionic_dim() const { return frame_.n() / 4; }
  /// alpha in 1..3
  const Endo<T>& j(int alpha) const { return j_.at(alpha - 1); }
  const std::array<Endo<T>, 3>& structures() const { return j_; }
  static int eps(int alpha) { return kHnSigns.at(alpha - 1); }

 private:
  LieFrame<T> frame_;
  std::array<Endo<T>, 3> j_;
};

struct Violation {
  ErrorKind kind;
  std::string relation;
  int alpha = 0;                       // 0 when not tied to one structure
  std::array<std::size_t, 2> index{};  // 0-based entry where it first fails
};

namespace detail {

template <class T>
std::optional<std::array<std::size_t, 2>> first_nonzero(const Matrix<T>& m, double scale) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!is_zero(m(r, c), scale)) return std::array{r, c};
  return std::nullopt;
}

inline std::string jname(int alpha) { return "J" + std::to_string(alpha); }

}  // namespace detail

/// Collects every violated structure relation (empty means valid).
template <Field T>
std::vector<Violation> validate_hn(const LieFrame<T>& f, const std::array<Endo<T>, 3>& j) {
  std::vector<Violation> out;
  const std::size_t n = f.n();
  if (n == 0 || n % 4 != 0) {
    out.push_back({ErrorKind::precondition_violation, "dimension must be a positive multiple of 4", 0, {}});
    return out;
  }
  for (int a = 1; a <= 3; ++a)
    if (!j[a - 1].frame().same_as(f)) {
      out.push_back({ErrorKind::frame_mismatch, detail::jname(a) + " lives on another frame", a, {}});
      return out;
    }
  const Matrix<T> id = Matrix<T>::identity(n);
  double jmax = 0.0;
  for (const auto& e : j) jmax = std::max(jmax, e.matrix().max_abs());
  const double qscale = (1.0 + jmax) * (1.0 + jmax);

  auto check = [&](ErrorKind kind, const Matrix<T>& m, double scale, std::string rel, int alpha) {
    if (auto at = detail::first_nonzero(m, scale)) out.push_back({kind, std::move(rel), alpha, *at});
  };
  for (int a = 1; a <= 3; ++a) {
    const auto& ja = j[a - 1].matrix();
    check(ErrorKind::quaternionic_violation, ja * ja + id, qscale, detail::jname(a) + "^2 = -I", a);
  }
  for (int a = 1; a <= 3; ++a) {
    int b = a % 3 + 1;
    int c = b % 3 + 1;
    const auto& ja = j[a - 1].matrix();
    const auto& jb = j[b - 1].matrix();
    const auto& jc = j[c - 1].matrix();
    check(ErrorKind::quaternionic_violation, jb * jc - ja, qscale,
          detail::jname(a) + " = " + detail::jname(b) + detail::jname(c), a);
    check(ErrorKind::quaternionic_violation, jc * jb + ja, qscale,
          detail::jname(a) + " = -" + detail::jname(c) + detail::jname(b), a);
  }
  const auto& g = f.metric();
  const double gscale = g.max_abs() * qscale;
  for (int a = 1; a <= 3; ++a) {
    const auto& ja = j[a - 1].matrix();
    const T e(HNStructure<T>::eps(a));
    check(ErrorKind::compatibility_violation, ja.transpose() * g * ja - e * g, gscale,
          "g(x,y) = " + std::string(HNStructure<T>::eps(a) > 0 ? "" : "-") + "g(" + detail::jname(a) + "x," +
              detail::jname(a) + "y)",
          a);
  }
  const Signature sig = signature(g);
  if (sig.positive != n / 2 || sig.negative != n / 2)
    out.push_back({ErrorKind::signature_violation,
                   "metric signature (" + std::to_string(sig.positive) + "," + std::to_string(sig.negative) +
                       ") is not neutral",
                   0,
                   {}});
  return out;
}

template <Field T>
HNStructure<T> build_hn(const LieFrame<T>& f, Endo<T> j1, Endo<T> j2, Endo<T> j3) {
  std::array<Endo<T>, 3> j{std::move(j1), std::move(j2), std::move(j3)};
  auto violations = validate_hn(f, j);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::string where = v.alpha ? " at (" + std::to_string(v.index[0] + 1) + "," + std::to_string(v.index[1] + 1) + ")"
                                : std::string();
    throw Error(v.kind, v.relation + where);
  }
  return HNStructure<T>(f, std::move(j));
}

template <Field To, Field From>
HNStructure<To> convert_hn(const HNStructure<From>& h) {
  LieFrame<To> f = convert_frame<To>(h.frame());
  auto conv = [&](int a) { return Endo<To>(f, convert_matrix<To>(h.j(a).matrix())); };
  return build_hn(f, conv(1), conv(2), conv(3));
}

/// T(i,j,k) = g_{kp} S(i,j,p)
template <Field T>
Tensor03<T> lower(const LieFrame<T>& f, const Tensor12<T>& s) {
  require_same_frame(f, s.frame(), "lower");
  const std::size_t n = f.n();
  const auto& g = f.metric();
  Tensor03<T> out(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t p = 0; p < n; ++p) acc += g(k, p) * s(i, j, p);
        out(i, j, k) = acc;
      }
  return out;
}

template <Field T>
Tensor03<T> lower(const HNStructure<T>& h, const Tensor12<T>& s) {
  return lower(h.frame(), s);
}

/// S(i,j,k) = g^{kp} T(i,j,p)
template <Field T>
Tensor12<T> raise(const LieFrame<T>& f, const Tensor03<T>& t) {
  require_same_frame(f, t.frame(), "raise");
  const std::size_t n = f.n();
  const auto& gi = f.metric_inverse();
  Tensor12<T> out(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t p = 0; p < n; ++p) acc += gi(k, p) * t(i, j, p);
        out(i, j, k) = acc;
      }
  return out;
}

/// F_α(x,y,z) = g((∇_x J_α) y, z)
template <class T>
struct FundamentalTensor {
  int alpha = 1;
  Tensor03<T> tensor;
};

template <Field T>
FundamentalTensor<T> fundamental(const HNStructure<T>& h, int alpha) {
  if (alpha < 1 || alpha > 3) throw Error(ErrorKind::precondition_violation, "alpha must be 1, 2 or 3");
  return {alpha, lower(h.frame(), nabla_endo(h.frame(), h.j(alpha)))};
}

/// Residuals of F(x,y,z) = -ε F(x,z,y) and F(x,y,z) = -ε F(x,Jy,Jz).
template <Field T>
std::vector<ResidualRow<T>> fa_prop_residuals(const HNStructure<T>& h, const FundamentalTensor<T>& fa) {
  const T e(HNStructure<T>::eps(fa.alpha));
  const auto& j = h.j(fa.alpha);
  const auto& F = fa.tensor;
  std::string name = "F" + std::to_string(fa.alpha);
  Combination<T, Type03Tag> swap(h.frame());
  swap.add(F).add(e, permuted(F, {0, 2, 1}));
  Combination<T, Type03Tag> twist(h.frame());
  twist.add(F).add(e, with_slot(with_slot(F, j, 1), j, 2));
  return {swap.row(name + "(x,y,z) = -eps " + name + "(x,z,y)"),
          twist.row(name + "(x,y,z) = -eps " + name + "(x,J" + std::to_string(fa.alpha) + "y,J" +
                    std::to_string(fa.alpha) + "z)")};
}

/// The six associated Nijenhuis tensors, in the order
/// {J1,J1}, {J2,J2}, {J3,J3}, {J1,J2}, {J2,J3}, {J3,J1}.
template <class T>
struct AssocSix {
  static constexpr std::array<std::array<int, 2>, 6> pairs{{{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}, {3, 1}}};
  std::array<Tensor12<T>, 6> tensors;
  std::array<T, 6> max_norm;
  std::array<bool, 6> vanish{};

  static std::string label(std::size_t idx) {
    return "{J" + std::to_string(pairs[idx][0]) + ",J" + std::to_string(pairs[idx][1]) + "}";
  }
  std::size_t vanishing_count() const {
    return static_cast<std::size_t>(std::count(vanish.begin(), vanish.end(), true));
  }
  bool all_vanish() const { return vanishing_count() == 6; }
};

/// Evaluates all six tensors. If two or more vanish, all six must; anything
/// else is reported as a theorem-inconsistency (an implementation bug).
template <Field T>
AssocSix<T> assoc_six(const HNStructure<T>& h) {
  AssocSix<T> out;
  for (std::size_t idx = 0; idx < 6; ++idx) {
    const auto& a = h.j(AssocSix<T>::pairs[idx][0]);
    const auto& b = h.j(AssocSix<T>::pairs[idx][1]);
    out.tensors[idx] = assoc_nijenhuis_pair(a, b);
    out.max_norm[idx] = out.tensors[idx].max_component();
    out.vanish[idx] = is_zero(out.max_norm[idx], pair_scale(a, b, true));
  }
  const auto count = out.vanishing_count();
  if (count >= 2 && count < 6)
    throw Error(ErrorKind::theorem_inconsistency,
                std::to_string(count) + " of six associated Nijenhuis tensors vanish but not all");
  return out;
}

/// Ten relations between the six associated Nijenhuis tensors, each as LHS - RHS.
/// `~` stands for the ⋏ composition.
template <Field T>
std::vector<ResidualRow<T>> verify_lemma_3_1(const HNStructure<T>& h) {
  const auto& f = h.frame();
  const auto& j1 = h.j(1);
  const auto& j2 = h.j(2);
  const auto& j3 = h.j(3);
  const auto n11 = assoc_nijenhuis_pair(j1, j1);
  const auto n22 = assoc_nijenhuis_pair(j2, j2);
  const auto n33 = assoc_nijenhuis_pair(j3, j3);
  const auto n12 = assoc_nijenhuis_pair(j1, j2);
  const auto n23 = assoc_nijenhuis_pair(j2, j3);
  const auto n31 = assoc_nijenhuis_pair(j3, j1);
  const T half = T(1) / T(2);
  const T two(2);
  using C = Combination<T, Type12Tag>;
  auto R = [](const Tensor12<T>& s, const Endo<T>& l) { return barwedge_right(s, l); };
  auto L = [](const Endo<T>& l, const Tensor12<T>& s) { return barwedge_left(l, s); };

  std::vector<ResidualRow<T>> rows;
  rows.push_back(C(f).add(n31).add(-half, R(n11, j2)).sub(L(j1, n12))
                     .row("{J3,J1} = 1/2 {J1,J1}~J2 + J1~{J1,J2}"));
  rows.push_back(C(f).add(n31).add(R(n12, j1)).add(L(j1, n12)).add(L(j2, n11))
                     .row("{J3,J1} = -{J1,J2}~J1 - J1~{J1,J2} - J2~{J1,J1}"));
  rows.push_back(C(f).add(L(j2, n11)).add(half, R(n11, j2)).add(two, L(j1, n12)).add(R(n12, j1))
                     .row("J2~{J1,J1} + 1/2 {J1,J1}~J2 + 2 J1~{J1,J2} + {J1,J2}~J1 = 0"));
  rows.push_back(C(f).add(n23).add(half, R(n22, j1)).add(L(j2, n12))
                     .row("{J2,J3} = -1/2 {J2,J2}~J1 - J2~{J1,J2}"));
  rows.push_back(C(f).add(n23).sub(L(j1, n22)).sub(R(n12, j2)).sub(L(j2, n12))
                     .row("{J2,J3} = J1~{J2,J2} + {J1,J2}~J2 + J2~{J1,J2}"));
  rows.push_back(C(f).add(L(j1, n22)).add(half, R(n22, j1)).add(R(n12, j2)).add(two, L(j2, n12))
                     .row("J1~{J2,J2} + 1/2 {J2,J2}~J1 + {J1,J2}~J2 + 2 J2~{J1,J2} = 0"));
  rows.push_back(C(f).add(n33).sub(n11).sub(R(n31, j2)).sub(L(j3, n12)).sub(L(j1, n23))
                     .row("{J3,J3} - {J1,J1} = {J3,J1}~J2 + J3~{J1,J2} + J1~{J2,J3}"));
  // includes the {J2,J2} term that the cyclic-shift derivation produces
  rows.push_back(C(f).add(n33).add(-half, n11).add(-half, n22).add(-half, R(n31, j2)).add(half, L(j2, n31))
                     .add(half, R(n23, j1)).add(-half, L(j1, n23))
                     .row("{J3,J3} = 1/2 ({J1,J1} + {J2,J2} + {J3,J1}~J2 - J2~{J3,J1} - {J2,J3}~J1 + J1~{J2,J3})"));
  rows.push_back(C(f).add(n11).sub(n22).add(R(n31, j2)).add(L(j2, n31)).add(two, L(j3, n12)).add(R(n23, j1))
                     .add(L(j1, n23))
                     .row("{J1,J1} - {J2,J2} + {J3,J1}~J2 + J2~{J3,J1} + 2 J3~{J1,J2} + {J2,J3}~J1 + J1~{J2,J3} = 0"));
  rows.push_back(C(f).add(R(n22, j2)).add(two, L(j2, n22)).row("{J2,J2}~J2 = -2 J2~{J2,J2}"));
  return rows;
}

/// Expansions of the lowered [J_α,J_α] and {J_α,J_α} through F_α.
template <Field T>
std::vector<ResidualRow<T>> verify_en_formulas(const HNStructure<T>& h, int alpha) {
  const auto& f = h.frame();
  const auto& j = h.j(alpha);
  const T e(HNStructure<T>::eps(alpha));
  const auto F = fundamental(h, alpha).tensor;
  const auto first = with_slot(F, j, 0);  // F(Jx,y,z)
  const auto last = with_slot(F, j, 2);   // F(x,y,Jz)
  const auto first_swapped = permuted(first, {1, 0, 2});
  const auto last_swapped = permuted(last, {1, 0, 2});
  const std::string a = std::to_string(alpha);

  Combination<T, Type03Tag> nij(f);
  nij.add(lower(f, nijenhuis_pair(j, j))).sub(first).add(-e, last).add(first_swapped).add(e, last_swapped);
  Combination<T, Type03Tag> assoc(f);
  assoc.add(lower(f, assoc_nijenhuis_pair(j, j))).sub(first).add(-e, last).sub(first_swapped).add(-e, last_swapped);
  return {nij.row("[J" + a + ",J" + a + "](x,y,z) = F(Jx,y,z) + eps F(x,y,Jz) - F(Jy,x,z) - eps F(y,x,Jz)"),
          assoc.row("{J" + a + ",J" + a + "}(x,y,z) = F(Jx,y,z) + eps F(x,y,Jz) + F(Jy,x,z) + eps F(y,x,Jz)")};
}

/// {J1,J1}(x,y,z) = [J1,J1](z,x,y) + [J1,J1](z,y,x)
template <Field T>
ResidualRow<T> verify_nn_nhat(const HNStructure<T>& h) {
  const auto& f = h.frame();
  const auto& j1 = h.j(1);
  const auto n = lower(f, nijenhuis_pair(j1, j1));
  Combination<T, Type03Tag> c(f);
  c.add(lower(f, assoc_nijenhuis_pair(j1, j1))).sub(permuted(n, {2, 0, 1})).sub(permuted(n, {2, 1, 0}));
  return c.row("{J1,J1}(x,y,z) = [J1,J1](z,x,y) + [J1,J1](z,y,x)");
}

struct ClassReport {
  bool g1_j1 = false;
  bool w3_j2 = false;
  bool w3_j3 = false;
  std::array<bool, 3> kahler{};
  bool g1_polarization = false;  // F1(x,y,z)+F1(y,x,z) = F1(J1x,J1y,z)+F1(J1y,J1x,z)
  bool g1_three_form = false;    // lowered [J1,J1] is a 3-form
};

template <Field T>
ClassReport class_report(const HNStructure<T>& h) {
  const auto& f = h.frame();
  std::array<Tensor03<T>, 3> F{fundamental(h, 1).tensor, fundamental(h, 2).tensor, fundamental(h, 3).tensor};
  ClassReport r;
  for (int a = 1; a <= 3; ++a) {
    const double jm = 1.0 + h.j(a).matrix().max_abs();
    r.kahler[a - 1] = F[a - 1].is_zero(F[a - 1].max_abs() * jm * jm);
  }

  const auto& j1 = h.j(1);
  const auto jj = with_slot(with_slot(F[0], j1, 0), j1, 1);  // F1(J1x,J1y,z)
  Combination<T, Type03Tag> pol(f);
  pol.add(F[0]).add(permuted(F[0], {1, 0, 2})).sub(jj).sub(permuted(jj, {1, 0, 2}));
  r.g1_polarization = pol.row("").zero;

  const auto n1 = lower(f, nijenhuis_pair(j1, j1));
  Combination<T, Type03Tag> form(f);
  form.add(n1).add(permuted(n1, {0, 2, 1}));
  r.g1_three_form = form.row("").zero;

  if (r.g1_polarization != r.g1_three_form)
    throw Error(ErrorKind::g1_predicate_disagreement, "F1 polarization and 3-form tests for G1(J1) disagree");
  r.g1_j1 = r.g1_polarization;

  auto cyclic_zero = [&](const Tensor03<T>& t) {
    Combination<T, Type03Tag> c(f);
    c.add(t).add(permuted(t, {1, 2, 0})).add(permuted(t, {2, 0, 1}));
    return c.row("").zero;
  };
  r.w3_j2 = cyclic_zero(F[1]);
  r.w3_j3 = cyclic_zero(F[2]);
  return r;
}

}  // namespace nij
