#include "mor/autodiff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mor/kernels.hpp"

namespace mor {

namespace {

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " + a.shape_str() +
                              " and " + b.shape_str());
}

}  // namespace

int Graph::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

const Graph::Node& Graph::at(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes_.size())) {
    throw std::out_of_range("graph: bad node id " + std::to_string(id));
  }
  return nodes_[static_cast<std::size_t>(id)];
}

Graph::Node& Graph::at(int id) {
  return const_cast<Node&>(static_cast<const Graph*>(this)->at(id));
}

int Graph::leaf(Tensor value) {
  Node n;
  n.op = Op::kLeaf;
  n.value = std::move(value);
  return push(std::move(n));
}

int Graph::matmul(int a, int b) {
  const Tensor& va = at(a).value;
  const Tensor& vb = at(b).value;
  if (va.rank() != 2 || vb.rank() != 2 || va.cols() != vb.rows()) shape_error("matmul", va, vb);
  Tensor out({va.rows(), vb.cols()});
  kernels::matmul(va.data(), vb.data(), out.data(), va.rows(), va.cols(), vb.cols());
  Node n;
  n.op = Op::kMatMul;
  n.in = {a, b};
  n.value = std::move(out);
  return push(std::move(n));
}

int Graph::bias_add(int a, int bias) {
  const Tensor& va = at(a).value;
  const Tensor& vb = at(bias).value;
  if (va.rank() != 2 || vb.rank() != 1 || va.cols() != vb.size()) shape_error("bias_add", va, vb);
  Tensor out = va;
  const std::size_t rows = va.rows(), cols = va.cols();
  for (std::size_t i = 0; i < rows; ++i) {
    double* ri = out.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) ri[j] += vb[j];
  }
  Node n;
  n.op = Op::kBiasAdd;
  n.in = {a, bias};
  n.value = std::move(out);
  return push(std::move(n));
}

int Graph::relu(int a) {
  const Tensor& va = at(a).value;
  Tensor out = Tensor::zeros_like(va);
  kernels::relu(va.data(), out.data(), va.size());
  Node n;
  n.op = Op::kRelu;
  n.in = {a, -1};
  n.value = std::move(out);
  return push(std::move(n));
}

int Graph::softmax_xent(int logits, std::vector<int> labels) {
  const Tensor& vl = at(logits).value;
  if (vl.rank() != 2) {
    throw std::invalid_argument("softmax_xent: logits must be a matrix, got " + vl.shape_str());
  }
  const std::size_t n = vl.rows(), c = vl.cols();
  if (labels.size() != n) {
    throw std::invalid_argument("softmax_xent: " + std::to_string(labels.size()) +
                                " labels for " + vl.shape_str() + " logits");
  }
  for (int y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= c) {
      throw std::invalid_argument("softmax_xent: label " + std::to_string(y) +
                                  " out of range [0," + std::to_string(c) + ")");
    }
  }
  Tensor p({n, c});
  kernels::softmax_rows(vl.data(), p.data(), n, c);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // -log p[y] computed from the max-shifted log-sum-exp for stability
    const double* li = vl.data() + i * c;
    double mx = li[0];
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, li[j]);
    double lse = 0.0;
    for (std::size_t j = 0; j < c; ++j) lse += std::exp(li[j] - mx);
    total += mx + std::log(lse) - li[labels[i]];
  }
  Node node;
  node.op = Op::kSoftmaxXent;
  node.in = {logits, -1};
  node.value = Tensor::scalar(total / static_cast<double>(n));
  node.labels = std::move(labels);
  node.softmax = std::move(p);
  return push(std::move(node));
}

int Graph::add(int a, int b) {
  const Tensor& va = at(a).value;
  const Tensor& vb = at(b).value;
  if (!va.same_shape(vb)) shape_error("add", va, vb);
  Tensor out = va;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += vb[i];
  Node n;
  n.op = Op::kAdd;
  n.in = {a, b};
  n.value = std::move(out);
  return push(std::move(n));
}

int Graph::sub(int a, int b) {
  const Tensor& va = at(a).value;
  const Tensor& vb = at(b).value;
  if (!va.same_shape(vb)) shape_error("sub", va, vb);
  Tensor out = va;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= vb[i];
  Node n;
  n.op = Op::kSub;
  n.in = {a, b};
  n.value = std::move(out);
  return push(std::move(n));
}

int Graph::scale(int a, double factor) {
  Tensor out = at(a).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= factor;
  Node n;
  n.op = Op::kScale;
  n.in = {a, -1};
  n.factor = factor;
  n.value = std::move(out);
  return push(std::move(n));
}

int Graph::mean(int a) {
  const Tensor& va = at(a).value;
  double s = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) s += va[i];
  Node n;
  n.op = Op::kMean;
  n.in = {a, -1};
  n.value = Tensor::scalar(s / static_cast<double>(va.size()));
  return push(std::move(n));
}

const Tensor& Graph::value(int id) const { return at(id).value; }

const Tensor& Graph::grad(int id) const {
  if (!ran_backward_) throw std::logic_error("graph: grad() before backward()");
  return at(id).grad;
}

void Graph::backward(int loss_id) {
  const Node& loss = at(loss_id);
  if (loss.value.size() != 1) {
    throw std::invalid_argument("backward: loss must be scalar, got " + loss.value.shape_str());
  }
  for (Node& n : nodes_) n.grad = Tensor::zeros_like(n.value);
  at(loss_id).grad = Tensor(loss.value.shape(), {1.0});

  for (int id = loss_id; id >= 0; --id) {
    Node& n = at(id);
    const Tensor& g = n.grad;
    switch (n.op) {
      case Op::kLeaf:
        break;
      case Op::kMatMul: {
        const Tensor& va = at(n.in[0]).value;
        const Tensor& vb = at(n.in[1]).value;
        Tensor& ga = at(n.in[0]).grad;
        Tensor& gb = at(n.in[1]).grad;
        // dA += dC * B^T ; dB += A^T * dC
        Tensor da({va.rows(), va.cols()});
        kernels::matmul_a_bt(g.data(), vb.data(), da.data(), g.rows(), g.cols(), vb.rows());
        for (std::size_t i = 0; i < da.size(); ++i) ga[i] += da[i];
        Tensor db({vb.rows(), vb.cols()});
        kernels::matmul_at_b(va.data(), g.data(), db.data(), va.rows(), va.cols(), g.cols());
        for (std::size_t i = 0; i < db.size(); ++i) gb[i] += db[i];
        break;
      }
      case Op::kBiasAdd: {
        Tensor& ga = at(n.in[0]).grad;
        Tensor& gb = at(n.in[1]).grad;
        for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g[i];
        const std::size_t rows = g.rows(), cols = g.cols();
        for (std::size_t i = 0; i < rows; ++i) {
          const double* gi = g.data() + i * cols;
          for (std::size_t j = 0; j < cols; ++j) gb[j] += gi[j];
        }
        break;
      }
      case Op::kRelu: {
        const Tensor& vx = at(n.in[0]).value;
        Tensor& gx = at(n.in[0]).grad;
        for (std::size_t i = 0; i < gx.size(); ++i) {
          if (vx[i] > 0.0) gx[i] += g[i];
        }
        break;
      }
      case Op::kSoftmaxXent: {
        Tensor& gl = at(n.in[0]).grad;
        const std::size_t rows = n.softmax.rows(), cols = n.softmax.cols();
        const double scale = g.item() / static_cast<double>(rows);
        for (std::size_t i = 0; i < rows; ++i) {
          const double* pi = n.softmax.data() + i * cols;
          double* gi = gl.data() + i * cols;
          for (std::size_t j = 0; j < cols; ++j) gi[j] += scale * pi[j];
          gi[n.labels[i]] -= scale;
        }
        break;
      }
      case Op::kAdd: {
        Tensor& ga = at(n.in[0]).grad;
        Tensor& gb = at(n.in[1]).grad;
        for (std::size_t i = 0; i < g.size(); ++i) {
          ga[i] += g[i];
          gb[i] += g[i];
        }
        break;
      }
      case Op::kSub: {
        Tensor& ga = at(n.in[0]).grad;
        Tensor& gb = at(n.in[1]).grad;
        for (std::size_t i = 0; i < g.size(); ++i) {
          ga[i] += g[i];
          gb[i] -= g[i];
        }
        break;
      }
      case Op::kScale: {
        Tensor& ga = at(n.in[0]).grad;
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += n.factor * g[i];
        break;
      }
      case Op::kMean: {
        Tensor& ga = at(n.in[0]).grad;
        const double scale = g.item() / static_cast<double>(ga.size());
        for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += scale;
        break;
      }
    }
  }
  ran_backward_ = true;
}

}  // namespace mor
