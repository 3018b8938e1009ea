/* Copyright 2026 The polsar Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef POLSAR_FUSION_TAPE_HPP_
#define POLSAR_FUSION_TAPE_HPP_

#include <functional>
#include <vector>

#include "polsar/fusion/tensor.hpp"

namespace polsar {

class Tape;

// Handle to a node on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  const Matrix& value() const;
  // Gradient after Tape::Backward; zeros when the node received none.
  const Matrix& grad() const;
  int rows() const { return value().rows; }
  int cols() const { return value().cols; }
  int id() const { return id_; }
  Tape* tape() const { return tape_; }

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

// Reverse-mode recording of matrix operations.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, int self)>;

  Var Constant(Matrix value);
  Var Leaf(Matrix value);

  // Records a node; |backward| is run only if some input needs a gradient.
  Var Push(Matrix value, std::vector<int> inputs, BackwardFn backward);

  // Seeds d(out)/d(out) with |seed| (ones for a 1 x 1 output when omitted)
  // and propagates to every node.
  void Backward(Var out);
  void Backward(Var out, const Matrix& seed);

  const Matrix& value(int id) const { return nodes_[id].value; }
  const Matrix& grad(int id);
  bool needs_grad(int id) const { return nodes_[id].needs_grad; }
  // Gradient accumulator of |id|, allocated on first use.
  Matrix& grad_accumulator(int id);
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool needs_grad = false;
    BackwardFn backward;
  };
  std::vector<Node> nodes_;
};

// Differentiable primitives. Shapes follow Matrix conventions.
namespace ad {

Var MatMul(Var a, Var b);
Var Transpose(Var a);
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
Var Scale(Var a, double s);
// a + broadcast of a 1 x cols row vector.
Var AddRowBias(Var a, Var bias);
// a + broadcast of a rows x 1 column vector.
Var AddColBias(Var a, Var bias);
Var SoftmaxRows(Var a);
Var Gelu(Var a);
// Per-row normalization with 1 x cols gain and bias.
Var LayerNormRows(Var a, Var gain, Var bias, double eps = 1e-5);
Var ConcatCols(Var a, Var b);
Var ConcatRows(const std::vector<Var>& parts);
Var SliceCols(Var a, int begin, int count);

enum class Padding { kZero, kReplicate };

// [C x H*W] feature map to [C*k*k x Ho*Wo] patch columns.
Var Im2Col(Var a, int height, int width, int kernel, int stride, int pad,
           Padding padding = Padding::kZero);
// 2 x 2 average pooling of a [C x H*W] map.
Var AvgPool2(Var a, int height, int width);
// Nearest-neighbour upsampling of a [C x H*W] map by |factor|.
Var UpsampleNearest(Var a, int height, int width, int factor);
// Sum of a (.) r as a 1 x 1 node; r is constant.
Var DotConst(Var a, const Matrix& r);

}  // namespace ad

int ConvOutputSize(int size, int kernel, int stride, int pad);

}  // namespace polsar

#endif  // POLSAR_FUSION_TAPE_HPP_
