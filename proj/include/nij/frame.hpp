#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "nij/matrix.hpp"
#include "nij/scalar.hpp"

namespace nij {

/// All fields are left-invariant on a Lie group: components are constant in
/// the frame, so X g(Y,Z) = 0 and derivatives reduce to structure constants.
enum class FrameMode { left_invariant };

/// A Lie algebra basis {X_1..X_n} with structure constants, a constant
/// metric and its Levi-Civita coefficients. Immutable; copies share storage
/// and compare equal by identity, which is what frame-mismatch checks use.
///
/// Index conventions (0-based in code):
///   structure(i,j,k) = C^k_{ij},  [X_i, X_j] = C^k_{ij} X_k
///   gamma(i,j,k)     = Γ^k_{ij},  ∇_{X_i} X_j = Γ^k_{ij} X_k
///   brace(i,j,k)     = Γ^k_{ij} + Γ^k_{ji}
template <class T>
class LieFrame {
 public:
  struct Data {
    std::size_t n = 0;
    std::vector<T> structure;
    Matrix<T> metric;
    Matrix<T> metric_inverse;
    std::vector<T> gamma;
    std::vector<T> brace;
    FrameMode mode = FrameMode::left_invariant;
  };

  LieFrame() = default;
  explicit LieFrame(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::size_t n() const { return data_->n; }
  const T& structure(std::size_t i, std::size_t j, std::size_t k) const { return data_->structure[at(i, j, k)]; }
  const T& gamma(std::size_t i, std::size_t j, std::size_t k) const { return data_->gamma[at(i, j, k)]; }
  const T& brace(std::size_t i, std::size_t j, std::size_t k) const { return data_->brace[at(i, j, k)]; }
  const Matrix<T>& metric() const { return data_->metric; }
  const Matrix<T>& metric_inverse() const { return data_->metric_inverse; }
  const std::vector<T>& structure_constants() const { return data_->structure; }
  const std::vector<T>& connection_coefficients() const { return data_->gamma; }
  FrameMode mode() const { return data_->mode; }
  bool left_invariant() const { return data_->mode == FrameMode::left_invariant; }

  bool valid() const { return data_ != nullptr; }
  bool same_as(const LieFrame& other) const { return data_ == other.data_; }

  std::size_t at(std::size_t i, std::size_t j, std::size_t k) const { return (i * n() + j) * n() + k; }

 private:
  std::shared_ptr<const Data> data_;
};

}  // namespace nij
