#include "mor/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mor {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  return n;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), 0.0) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_product(shape_) != data_.size()) {
    throw std::invalid_argument("tensor: shape " + shape_str() + " does not match data length " +
                                std::to_string(data_.size()));
  }
}

Tensor Tensor::scalar(double v) { return Tensor({}, {v}); }

Tensor Tensor::vector(std::vector<double> v) {
  std::size_t n = v.size();
  return Tensor({n}, std::move(v));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return Tensor({rows, cols}, std::move(data));
}

Tensor Tensor::zeros_like(const Tensor& t) { return Tensor(t.shape_); }

std::size_t Tensor::rows() const {
  if (rank() != 2) throw std::logic_error("tensor: rows() on non-matrix " + shape_str());
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2) throw std::logic_error("tensor: cols() on non-matrix " + shape_str());
  return shape_[1];
}

double& Tensor::at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
double Tensor::at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

const double* Tensor::row_ptr(std::size_t r) const { return data_.data() + r * cols(); }

double Tensor::item() const {
  if (data_.size() != 1) {
    throw std::logic_error("tensor: item() on non-scalar " + shape_str());
  }
  return data_[0];
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string Tensor::shape_str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape_[i]);
  }
  return s + "]";
}

Tensor sign(const Tensor& t) {
  Tensor out = Tensor::zeros_like(t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double v = t[i];
    out[i] = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  }
  return out;
}

Tensor clip_to_ball(const Tensor& candidate, const Tensor& anchor, double epsilon,
                    double lo, double hi) {
  if (!candidate.same_shape(anchor)) {
    throw std::invalid_argument("clip_to_ball: candidate " + candidate.shape_str() +
                                " vs anchor " + anchor.shape_str());
  }
  if (epsilon < 0.0) {
    throw std::invalid_argument("clip_to_ball: negative epsilon " + std::to_string(epsilon));
  }
  Tensor out = candidate;
  for (std::size_t i = 0; i < out.size(); ++i) {
    double v = std::clamp(out[i], anchor[i] - epsilon, anchor[i] + epsilon);
    out[i] = std::clamp(v, lo, hi);
  }
  return out;
}

double linf_distance(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("linf_distance: " + a.shape_str() + " vs " + b.shape_str());
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace mor
