#pragma once

// Frame-component tensors: endomorphisms (1,1), tensors of type (1,2) and
// (0,3). All of them are bound to a LieFrame; mixing frames is an error.

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "nij/error.hpp"
#include "nij/frame.hpp"
#include "nij/matrix.hpp"

namespace nij {

template <class T>
void require_same_frame(const LieFrame<T>& a, const LieFrame<T>& b, const char* where) {
  if (!a.same_as(b)) throw Error(ErrorKind::frame_mismatch, std::string(where) + ": operands live on different frames");
}

/// A (1,1)-tensor field, constant in the frame: (J x)^k = M(k, j) x^j.
template <class T>
class Endo {
 public:
  Endo() = default;
  Endo(LieFrame<T> frame, Matrix<T> m) : frame_(std::move(frame)), m_(std::move(m)) {
    if (m_.rows() != frame_.n() || m_.cols() != frame_.n())
      throw Error(ErrorKind::dimension_mismatch, "endomorphism size does not match frame dimension");
  }

  static Endo identity(const LieFrame<T>& f) { return Endo(f, Matrix<T>::identity(f.n())); }
  static Endo zero(const LieFrame<T>& f) { return Endo(f, Matrix<T>(f.n(), f.n())); }

  const LieFrame<T>& frame() const { return frame_; }
  const Matrix<T>& matrix() const { return m_; }
  std::size_t n() const { return m_.rows(); }
  const T& operator()(std::size_t k, std::size_t j) const { return m_(k, j); }

  std::vector<T> apply(std::span<const T> x) const { return m_.apply(x); }

  /// Composition (J∘K)x = J(Kx).
  friend Endo operator*(const Endo& a, const Endo& b) {
    require_same_frame(a.frame_, b.frame_, "endomorphism product");
    return Endo(a.frame_, a.m_ * b.m_);
  }
  friend Endo operator+(const Endo& a, const Endo& b) {
    require_same_frame(a.frame_, b.frame_, "endomorphism sum");
    return Endo(a.frame_, a.m_ + b.m_);
  }
  friend Endo operator-(const Endo& a, const Endo& b) {
    require_same_frame(a.frame_, b.frame_, "endomorphism difference");
    return Endo(a.frame_, a.m_ - b.m_);
  }
  friend Endo operator-(const Endo& a) { return Endo(a.frame_, -a.m_); }
  friend Endo operator*(const T& s, const Endo& a) { return Endo(a.frame_, s * a.m_); }
  friend bool operator==(const Endo& a, const Endo& b) { return a.frame_.same_as(b.frame_) && a.m_ == b.m_; }

 private:
  LieFrame<T> frame_;
  Matrix<T> m_;
};

/// Dense n^3 frame tensor. `Tag` distinguishes (1,2) from (0,3) at compile time.
template <class T, class Tag>
class FrameTensor {
 public:
  FrameTensor() = default;
  explicit FrameTensor(LieFrame<T> frame)
      : frame_(std::move(frame)), data_(frame_.n() * frame_.n() * frame_.n(), T(0)) {}
  FrameTensor(LieFrame<T> frame, std::vector<T> data) : frame_(std::move(frame)), data_(std::move(data)) {
    if (data_.size() != frame_.n() * frame_.n() * frame_.n())
      throw Error(ErrorKind::dimension_mismatch, "tensor component count does not match frame dimension");
  }

  const LieFrame<T>& frame() const { return frame_; }
  std::size_t n() const { return frame_.n(); }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[frame_.at(i, j, k)]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[frame_.at(i, j, k)]; }
  std::span<const T> components() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  bool is_zero(double scale = 0.0) const {
    return std::all_of(data_.begin(), data_.end(), [&](const T& x) { return nij::is_zero(x, scale); });
  }

  /// Index triple of the largest |component| (first one on ties).
  std::array<std::size_t, 3> argmax() const {
    std::size_t best = 0;
    for (std::size_t p = 1; p < data_.size(); ++p)
      if (ScalarTraits<T>::abs(data_[p]) > ScalarTraits<T>::abs(data_[best])) best = p;
    const std::size_t n2 = n() * n();
    return {best / n2, (best / n()) % n(), best % n()};
  }

  T max_component() const {
    if (data_.empty()) return T(0);
    auto [i, j, k] = argmax();
    return ScalarTraits<T>::abs((*this)(i, j, k));
  }

  FrameTensor& operator+=(const FrameTensor& o) {
    require_same_frame(frame_, o.frame_, "tensor sum");
    for (std::size_t p = 0; p < data_.size(); ++p) data_[p] += o.data_[p];
    return *this;
  }
  FrameTensor& operator-=(const FrameTensor& o) {
    require_same_frame(frame_, o.frame_, "tensor difference");
    for (std::size_t p = 0; p < data_.size(); ++p) data_[p] -= o.data_[p];
    return *this;
  }
  FrameTensor& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend FrameTensor operator+(FrameTensor a, const FrameTensor& b) { return a += b; }
  friend FrameTensor operator-(FrameTensor a, const FrameTensor& b) { return a -= b; }
  friend FrameTensor operator-(FrameTensor a) { return a *= T(-1); }
  friend FrameTensor operator*(const T& s, FrameTensor a) { return a *= s; }
  friend bool operator==(const FrameTensor& a, const FrameTensor& b) {
    return a.frame_.same_as(b.frame_) && a.data_ == b.data_;
  }

 private:
  LieFrame<T> frame_;
  std::vector<T> data_;
};

struct Type12Tag {};
struct Type03Tag {};

/// S(X_i, X_j) = S(i,j,k) X_k
template <class T>
using Tensor12 = FrameTensor<T, Type12Tag>;

/// T(X_i, X_j, X_k) = T(i,j,k)
template <class T>
using Tensor03 = FrameTensor<T, Type03Tag>;

/// Structure constants viewed as the (1,2)-tensor (X,Y) -> [X,Y].
template <class T>
Tensor12<T> bracket_tensor(const LieFrame<T>& f) {
  return Tensor12<T>(f, f.structure_constants());
}

/// The symmetric braces (X,Y) -> ∇_X Y + ∇_Y X as a (1,2)-table.
template <class T>
Tensor12<T> braces_tensor(const LieFrame<T>& f) {
  const std::size_t n = f.n();
  Tensor12<T> out(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = f.brace(i, j, k);
  return out;
}

/// R(x0,x1,x2) = S(x_{p0}, x_{p1}, x_{p2}) for a (0,3)-tensor.
template <class T>
Tensor03<T> permuted(const Tensor03<T>& s, std::array<int, 3> p) {
  const std::size_t n = s.n();
  Tensor03<T> out(s.frame());
  std::array<std::size_t, 3> idx{};
  for (idx[0] = 0; idx[0] < n; ++idx[0])
    for (idx[1] = 0; idx[1] < n; ++idx[1])
      for (idx[2] = 0; idx[2] < n; ++idx[2]) out(idx[0], idx[1], idx[2]) = s(idx[p[0]], idx[p[1]], idx[p[2]]);
  return out;
}

/// Feeds `L` into one argument slot: R(x,y,z) = S(Lx,y,z) for slot 0, etc.
template <class T>
Tensor03<T> with_slot(const Tensor03<T>& s, const Endo<T>& l, int slot) {
  require_same_frame(s.frame(), l.frame(), "with_slot");
  const std::size_t n = s.n();
  Tensor03<T> out(s.frame());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T acc(0);
        for (std::size_t a = 0; a < n; ++a) {
          switch (slot) {
            case 0: acc += l(a, i) * s(a, j, k); break;
            case 1: acc += l(a, j) * s(i, a, k); break;
            default: acc += l(a, k) * s(i, j, a); break;
          }
        }
        out(i, j, k) = acc;
      }
  return out;
}

/// Residual of total antisymmetry (max over both adjacent transpositions).
template <class T>
Tensor03<T> antisymmetry_defect(const Tensor03<T>& t) {
  const std::size_t n = t.n();
  Tensor03<T> out(t.frame());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        T a = t(i, j, k) + t(j, i, k);
        T b = t(i, j, k) + t(i, k, j);
        out(i, j, k) = ScalarTraits<T>::abs(a) > ScalarTraits<T>::abs(b) ? a : b;
      }
  return out;
}

}  // namespace nij
