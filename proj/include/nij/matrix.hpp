#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "nij/error.hpp"
#include "nij/scalar.hpp"

namespace nij {

/// Dense row-major matrix over one scalar backend.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorKind::dimension_mismatch, "matrix entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  bool is_zero(double scale = 0.0) const {
    return std::all_of(data_.begin(), data_.end(), [&](const T& x) { return nij::is_zero(x, scale); });
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if (!nij::is_zero(T((*this)(r, c) - (*this)(c, r)), max_abs())) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = -a.data_[i];
    return out;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = s * a.data_[i];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::dimension_mismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t p = 0; p < a.cols_; ++p) {
        const T& aip = a(i, p);
        if (sgn_zero(aip)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aip * b(p, j);
      }
    return out;
  }

  std::vector<T> apply(std::span<const T> x) const {
    if (x.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "matrix-vector shape mismatch");
    std::vector<T> y(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

 private:
  static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::dimension_mismatch, "matrix shapes differ");
  }
  static bool sgn_zero(const T& x) { return x == T(0); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Field To, Field From>
Matrix<To> convert_matrix(const Matrix<From>& m) {
  std::vector<To> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.push_back(convert_scalar<To>(x));
  return Matrix<To>(m.rows(), m.cols(), std::move(out));
}

/// Lowers a runtime-tagged matrix to a typed one; any entry on another backend is rejected.
template <Field T>
Matrix<T> typed_matrix(const Matrix<Scalar>& m) {
  std::vector<T> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.push_back(x.template get<T>());
  return Matrix<T>(m.rows(), m.cols(), std::move(out));
}

template <Field T>
Matrix<Scalar> tagged_matrix(const Matrix<T>& m) {
  std::vector<Scalar> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) out.emplace_back(x);
  return Matrix<Scalar>(m.rows(), m.cols(), std::move(out));
}

}  // namespace nij
