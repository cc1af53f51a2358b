#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mor {

// Dense row-major tensor of 64-bit floats. Rank 0 (scalar), 1 or 2.
// Tensors are plain values: cheap to copy at arena sizes, safe to share
// read-only across threads.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape);  // zero-filled
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor scalar(double v);
  static Tensor vector(std::vector<double> v);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static Tensor zeros_like(const Tensor& t);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const;
  std::size_t cols() const;

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c);
  double at(std::size_t r, std::size_t c) const;
  const double* row_ptr(std::size_t r) const;

  // Value of a single-element tensor; throws otherwise.
  double item() const;

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const;
  std::string shape_str() const;  // e.g. "[3x4]"

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

// Elementwise sign; sign(0) = 0, so sign(-t) == -sign(t) holds exactly.
Tensor sign(const Tensor& t);

// Projects candidate onto the L-inf epsilon ball around anchor, then onto the
// [lo, hi] box. Idempotent. Rejects epsilon < 0 and shape mismatch.
Tensor clip_to_ball(const Tensor& candidate, const Tensor& anchor, double epsilon,
                    double lo = 0.0, double hi = 1.0);

double linf_distance(const Tensor& a, const Tensor& b);

}  // namespace mor
