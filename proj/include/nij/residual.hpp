#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nij/tensor.hpp"

namespace nij {

/// One checked identity: max-norm of LHS - RHS and where it is attained.
template <class T>
struct ResidualRow {
  std::string label;
  T max_residual = T(0);
  std::array<std::size_t, 3> argmax{};  // 0-based
  double scale = 0.0;                    // magnitude of the largest term; feeds the float zero test
  bool zero = true;
};

template <class T>
bool all_zero(const std::vector<ResidualRow<T>>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.zero; });
}

template <class T, class Tag>
ResidualRow<T> make_row(std::string label, const FrameTensor<T, Tag>& diff, double scale) {
  ResidualRow<T> row;
  row.label = std::move(label);
  row.argmax = diff.argmax();
  row.max_residual = diff.max_component();
  row.scale = scale;
  row.zero = is_zero(row.max_residual, scale);
  return row;
}

/// Σ c_i · S_i over tensors of one kind, remembering the largest term so the
/// float zero test is relative to what was actually summed.
template <class T, class Tag>
class Combination {
 public:
  explicit Combination(const LieFrame<T>& f) : sum_(f) {}

  Combination& add(const T& coeff, const FrameTensor<T, Tag>& term) {
    scale_ = std::max(scale_, magnitude(coeff) * term.max_abs());
    sum_ += coeff * term;
    return *this;
  }
  Combination& add(const FrameTensor<T, Tag>& term) { return add(T(1), term); }
  Combination& sub(const FrameTensor<T, Tag>& term) { return add(T(-1), term); }

  const FrameTensor<T, Tag>& value() const { return sum_; }
  double scale() const { return scale_; }
  ResidualRow<T> row(std::string label) const { return make_row(std::move(label), sum_, scale_); }

 private:
  FrameTensor<T, Tag> sum_;
  double scale_ = 0.0;
};

}  // namespace nij
