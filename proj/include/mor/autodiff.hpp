#pragma once

#include <array>
#include <vector>

#include "mor/tensor.hpp"

namespace mor {

// Reverse-mode tape over the primitive set needed for MLP training and
// gradient-sign attacks: matmul, bias add, ReLU, softmax cross-entropy with
// integer labels, elementwise add/sub/scale, mean.
//
// Nodes are appended in topological order by construction; backward() runs a
// single reverse sweep, so every node reachable from the loss accumulates its
// gradient exactly once. A Graph is single-owner: parallel work runs
// independent graphs.
class Graph {
 public:
  int leaf(Tensor value);
  int matmul(int a, int b);
  // a: [n x m], bias: rank-1 [m], broadcast over rows
  int bias_add(int a, int bias);
  int relu(int a);
  // logits: [n x c], labels in [0, c); scalar mean cross-entropy over rows
  int softmax_xent(int logits, std::vector<int> labels);
  int add(int a, int b);
  int sub(int a, int b);
  int scale(int a, double factor);
  int mean(int a);

  const Tensor& value(int id) const;
  // Reverse sweep from a scalar loss node; rejects non-scalar losses.
  void backward(int loss_id);
  const Tensor& grad(int id) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  enum class Op { kLeaf, kMatMul, kBiasAdd, kRelu, kSoftmaxXent, kAdd, kSub, kScale, kMean };

  struct Node {
    Op op;
    std::array<int, 2> in{-1, -1};
    Tensor value;
    Tensor grad;
    double factor = 0.0;       // kScale
    std::vector<int> labels;   // kSoftmaxXent
    Tensor softmax;            // kSoftmaxXent: cached row probabilities
  };

  int push(Node n);
  const Node& at(int id) const;
  Node& at(int id);

  std::vector<Node> nodes_;
  bool ran_backward_ = false;
};

}  // namespace mor
