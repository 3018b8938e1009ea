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

#include "polsar/fusion/tape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

void AddInto(Matrix& dst, const Matrix& src) {
  for (std::size_t i = 0; i < dst.data.size(); ++i) dst.data[i] += src.data[i];
}

void RequireShape(bool ok, const char* op) {
  if (!ok) throw ValidationError(std::string(op) + ": shape mismatch");
}

Tape& SharedTape(Var a, Var b) {
  if (a.tape() == nullptr || a.tape() != b.tape()) {
    throw ValidationError("operands live on different tapes");
  }
  return *a.tape();
}

}  // namespace

const Matrix& Var::value() const { return tape_->value(id_); }
const Matrix& Var::grad() const { return tape_->grad(id_); }

int ConvOutputSize(int size, int kernel, int stride, int pad) {
  return (size + 2 * pad - kernel) / stride + 1;
}

Var Tape::Constant(Matrix value) {
  nodes_.push_back({std::move(value), {}, false, nullptr});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Leaf(Matrix value) {
  nodes_.push_back({std::move(value), {}, true, nullptr});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Push(Matrix value, std::vector<int> inputs, BackwardFn backward) {
  bool needs = false;
  for (int i : inputs) needs = needs || nodes_[i].needs_grad;
  nodes_.push_back(
      {std::move(value), {}, needs, needs ? std::move(backward) : nullptr});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Matrix& Tape::grad_accumulator(int id) {
  Node& n = nodes_[id];
  if (n.grad.size() != n.value.size()) {
    n.grad = Matrix(n.value.rows, n.value.cols);
  }
  return n.grad;
}

const Matrix& Tape::grad(int id) { return grad_accumulator(id); }

void Tape::Backward(Var out) {
  if (out.rows() != 1 || out.cols() != 1) {
    throw ValidationError("Backward without a seed needs a 1x1 output");
  }
  Backward(out, Matrix(1, 1, 1.0));
}

void Tape::Backward(Var out, const Matrix& seed) {
  if (!seed.SameShape(out.value())) {
    throw ValidationError("gradient seed shape mismatch");
  }
  for (auto& n : nodes_) n.grad = Matrix();
  grad_accumulator(out.id()) = seed;
  for (int i = out.id(); i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.needs_grad || !n.backward || n.grad.size() == 0) continue;
    n.backward(*this, i);
  }
}

namespace ad {

Var MatMul(Var a, Var b) {
  Tape& t = SharedTape(a, b);
  const int ia = a.id(), ib = b.id();
  return t.Push(polsar::MatMul(a.value(), b.value()), {ia, ib},
                [ia, ib](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  if (t.needs_grad(ia)) {
                    AddInto(t.grad_accumulator(ia),
                            polsar::MatMul(g, Transposed(t.value(ib))));
                  }
                  if (t.needs_grad(ib)) {
                    AddInto(t.grad_accumulator(ib),
                            polsar::MatMul(Transposed(t.value(ia)), g));
                  }
                });
}

Var Transpose(Var a) {
  Tape& t = *a.tape();
  const int ia = a.id();
  return t.Push(Transposed(a.value()), {ia}, [ia](Tape& t, int self) {
    AddInto(t.grad_accumulator(ia), Transposed(t.grad(self)));
  });
}

Var Add(Var a, Var b) {
  Tape& t = SharedTape(a, b);
  RequireShape(a.value().SameShape(b.value()), "add");
  Matrix v = a.value();
  AddInto(v, b.value());
  const int ia = a.id(), ib = b.id();
  return t.Push(std::move(v), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) AddInto(t.grad_accumulator(ia), g);
    if (t.needs_grad(ib)) AddInto(t.grad_accumulator(ib), g);
  });
}

Var Sub(Var a, Var b) {
  Tape& t = SharedTape(a, b);
  RequireShape(a.value().SameShape(b.value()), "sub");
  Matrix v = a.value();
  for (std::size_t i = 0; i < v.size(); ++i) v.data[i] -= b.value().data[i];
  const int ia = a.id(), ib = b.id();
  return t.Push(std::move(v), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) AddInto(t.grad_accumulator(ia), g);
    if (t.needs_grad(ib)) {
      Matrix& d = t.grad_accumulator(ib);
      for (std::size_t i = 0; i < d.size(); ++i) d.data[i] -= g.data[i];
    }
  });
}

Var Mul(Var a, Var b) {
  Tape& t = SharedTape(a, b);
  RequireShape(a.value().SameShape(b.value()), "mul");
  Matrix v = a.value();
  for (std::size_t i = 0; i < v.size(); ++i) v.data[i] *= b.value().data[i];
  const int ia = a.id(), ib = b.id();
  return t.Push(std::move(v), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) {
      Matrix& d = t.grad_accumulator(ia);
      const Matrix& bv = t.value(ib);
      for (std::size_t i = 0; i < d.size(); ++i) d.data[i] += g.data[i] * bv.data[i];
    }
    if (t.needs_grad(ib)) {
      Matrix& d = t.grad_accumulator(ib);
      const Matrix& av = t.value(ia);
      for (std::size_t i = 0; i < d.size(); ++i) d.data[i] += g.data[i] * av.data[i];
    }
  });
}

Var Scale(Var a, double s) {
  Tape& t = *a.tape();
  Matrix v = a.value();
  for (double& x : v.data) x *= s;
  const int ia = a.id();
  return t.Push(std::move(v), {ia}, [ia, s](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    Matrix& d = t.grad_accumulator(ia);
    for (std::size_t i = 0; i < d.size(); ++i) d.data[i] += s * g.data[i];
  });
}

Var AddRowBias(Var a, Var bias) {
  Tape& t = SharedTape(a, bias);
  RequireShape(bias.rows() == 1 && bias.cols() == a.cols(), "row bias");
  Matrix v = a.value();
  for (int r = 0; r < v.rows; ++r) {
    for (int c = 0; c < v.cols; ++c) v.at(r, c) += bias.value().data[c];
  }
  const int ia = a.id(), ib = bias.id();
  return t.Push(std::move(v), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) AddInto(t.grad_accumulator(ia), g);
    if (t.needs_grad(ib)) {
      Matrix& d = t.grad_accumulator(ib);
      for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) d.data[c] += g.at(r, c);
      }
    }
  });
}

Var AddColBias(Var a, Var bias) {
  Tape& t = SharedTape(a, bias);
  RequireShape(bias.cols() == 1 && bias.rows() == a.rows(), "column bias");
  Matrix v = a.value();
  for (int r = 0; r < v.rows; ++r) {
    for (int c = 0; c < v.cols; ++c) v.at(r, c) += bias.value().data[r];
  }
  const int ia = a.id(), ib = bias.id();
  return t.Push(std::move(v), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) AddInto(t.grad_accumulator(ia), g);
    if (t.needs_grad(ib)) {
      Matrix& d = t.grad_accumulator(ib);
      for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) d.data[r] += g.at(r, c);
      }
    }
  });
}

Var SoftmaxRows(Var a) {
  Tape& t = *a.tape();
  Matrix v = a.value();
  for (int r = 0; r < v.rows; ++r) {
    double* row = &v.data[static_cast<std::size_t>(r) * v.cols];
    const double m = *std::max_element(row, row + v.cols);
    double sum = 0.0;
    for (int c = 0; c < v.cols; ++c) {
      row[c] = std::exp(row[c] - m);
      sum += row[c];
    }
    for (int c = 0; c < v.cols; ++c) row[c] /= sum;
  }
  const int ia = a.id();
  return t.Push(std::move(v), {ia}, [ia](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    const Matrix& y = t.value(self);
    Matrix& d = t.grad_accumulator(ia);
    for (int r = 0; r < y.rows; ++r) {
      double dot = 0.0;
      for (int c = 0; c < y.cols; ++c) dot += g.at(r, c) * y.at(r, c);
      for (int c = 0; c < y.cols; ++c) {
        d.at(r, c) += y.at(r, c) * (g.at(r, c) - dot);
      }
    }
  });
}

Var Gelu(Var a) {
  Tape& t = *a.tape();
  Matrix v = a.value();
  for (double& x : v.data) x = 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2));
  const int ia = a.id();
  return t.Push(std::move(v), {ia}, [ia](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    const Matrix& x = t.value(ia);
    Matrix& d = t.grad_accumulator(ia);
    const double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double xi = x.data[i];
      const double cdf = 0.5 * (1.0 + std::erf(xi / std::numbers::sqrt2));
      const double pdf = inv_sqrt_2pi * std::exp(-0.5 * xi * xi);
      d.data[i] += g.data[i] * (cdf + xi * pdf);
    }
  });
}

Var LayerNormRows(Var a, Var gain, Var bias, double eps) {
  Tape& t = SharedTape(a, gain);
  RequireShape(gain.rows() == 1 && gain.cols() == a.cols() &&
                   bias.value().SameShape(gain.value()),
               "layer norm");
  const Matrix& x = a.value();
  const int n = x.cols;
  Matrix xhat(x.rows, n);
  std::vector<double> inv_std(x.rows);
  Matrix v(x.rows, n);
  for (int r = 0; r < x.rows; ++r) {
    double mean = 0.0;
    for (int c = 0; c < n; ++c) mean += x.at(r, c);
    mean /= n;
    double var = 0.0;
    for (int c = 0; c < n; ++c) var += (x.at(r, c) - mean) * (x.at(r, c) - mean);
    var /= n;
    inv_std[r] = 1.0 / std::sqrt(var + eps);
    for (int c = 0; c < n; ++c) {
      xhat.at(r, c) = (x.at(r, c) - mean) * inv_std[r];
      v.at(r, c) = xhat.at(r, c) * gain.value().data[c] + bias.value().data[c];
    }
  }
  const int ia = a.id(), ig = gain.id(), ib = bias.id();
  return t.Push(std::move(v), {ia, ig, ib},
                [ia, ig, ib, xhat = std::move(xhat),
                 inv_std = std::move(inv_std)](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  const Matrix& gain = t.value(ig);
                  const int n = g.cols;
                  if (t.needs_grad(ig)) {
                    Matrix& d = t.grad_accumulator(ig);
                    for (int r = 0; r < g.rows; ++r) {
                      for (int c = 0; c < n; ++c) d.data[c] += g.at(r, c) * xhat.at(r, c);
                    }
                  }
                  if (t.needs_grad(ib)) {
                    Matrix& d = t.grad_accumulator(ib);
                    for (int r = 0; r < g.rows; ++r) {
                      for (int c = 0; c < n; ++c) d.data[c] += g.at(r, c);
                    }
                  }
                  if (t.needs_grad(ia)) {
                    Matrix& d = t.grad_accumulator(ia);
                    for (int r = 0; r < g.rows; ++r) {
                      double mean_dy = 0.0, mean_dy_xhat = 0.0;
                      for (int c = 0; c < n; ++c) {
                        const double dy = g.at(r, c) * gain.data[c];
                        mean_dy += dy;
                        mean_dy_xhat += dy * xhat.at(r, c);
                      }
                      mean_dy /= n;
                      mean_dy_xhat /= n;
                      for (int c = 0; c < n; ++c) {
                        const double dy = g.at(r, c) * gain.data[c];
                        d.at(r, c) += inv_std[r] *
                                      (dy - mean_dy - xhat.at(r, c) * mean_dy_xhat);
                      }
                    }
                  }
                });
}

Var ConcatCols(Var a, Var b) {
  Tape& t = SharedTape(a, b);
  RequireShape(a.rows() == b.rows(), "concat cols");
  const int ca = a.cols(), cb = b.cols();
  Matrix v(a.rows(), ca + cb);
  for (int r = 0; r < v.rows; ++r) {
    for (int c = 0; c < ca; ++c) v.at(r, c) = a.value().at(r, c);
    for (int c = 0; c < cb; ++c) v.at(r, ca + c) = b.value().at(r, c);
  }
  const int ia = a.id(), ib = b.id();
  return t.Push(std::move(v), {ia, ib}, [ia, ib, ca, cb](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    if (t.needs_grad(ia)) {
      Matrix& d = t.grad_accumulator(ia);
      for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < ca; ++c) d.at(r, c) += g.at(r, c);
      }
    }
    if (t.needs_grad(ib)) {
      Matrix& d = t.grad_accumulator(ib);
      for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < cb; ++c) d.at(r, c) += g.at(r, ca + c);
      }
    }
  });
}

Var ConcatRows(const std::vector<Var>& parts) {
  if (parts.empty()) throw ValidationError("concat of nothing");
  Tape& t = *parts.front().tape();
  const int cols = parts.front().cols();
  int rows = 0;
  std::vector<int> ids;
  for (const Var& p : parts) {
    if (p.tape() != &t) throw ValidationError("operands live on different tapes");
    RequireShape(p.cols() == cols, "concat rows");
    rows += p.rows();
    ids.push_back(p.id());
  }
  Matrix v(rows, cols);
  std::size_t offset = 0;
  for (const Var& p : parts) {
    std::copy(p.value().data.begin(), p.value().data.end(),
              v.data.begin() + static_cast<long>(offset));
    offset += p.value().size();
  }
  return t.Push(std::move(v), ids, [ids](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    std::size_t offset = 0;
    for (int id : ids) {
      const std::size_t n = t.value(id).size();
      if (t.needs_grad(id)) {
        Matrix& d = t.grad_accumulator(id);
        for (std::size_t i = 0; i < n; ++i) d.data[i] += g.data[offset + i];
      }
      offset += n;
    }
  });
}

Var SliceCols(Var a, int begin, int count) {
  Tape& t = *a.tape();
  RequireShape(begin >= 0 && count >= 0 && begin + count <= a.cols(),
               "slice cols");
  Matrix v(a.rows(), count);
  for (int r = 0; r < v.rows; ++r) {
    for (int c = 0; c < count; ++c) v.at(r, c) = a.value().at(r, begin + c);
  }
  const int ia = a.id();
  return t.Push(std::move(v), {ia}, [ia, begin, count](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    Matrix& d = t.grad_accumulator(ia);
    for (int r = 0; r < g.rows; ++r) {
      for (int c = 0; c < count; ++c) d.at(r, begin + c) += g.at(r, c);
    }
  });
}

Var Im2Col(Var a, int height, int width, int kernel, int stride, int pad,
           Padding padding) {
  Tape& t = *a.tape();
  RequireShape(a.cols() == height * width, "im2col");
  const int channels = a.rows();
  const int ho = ConvOutputSize(height, kernel, stride, pad);
  const int wo = ConvOutputSize(width, kernel, stride, pad);
  if (ho <= 0 || wo <= 0) throw ValidationError("im2col: kernel exceeds input");
  // Source index per output entry, -1 for zero padding.
  std::vector<int> source(static_cast<std::size_t>(channels) * kernel * kernel * ho * wo);
  std::size_t n = 0;
  for (int c = 0; c < channels; ++c) {
    for (int ky = 0; ky < kernel; ++ky) {
      for (int kx = 0; kx < kernel; ++kx) {
        for (int oy = 0; oy < ho; ++oy) {
          for (int ox = 0; ox < wo; ++ox) {
            int y = oy * stride + ky - pad;
            int x = ox * stride + kx - pad;
            const bool inside = y >= 0 && y < height && x >= 0 && x < width;
            if (!inside && padding == Padding::kZero) {
              source[n++] = -1;
              continue;
            }
            y = std::clamp(y, 0, height - 1);
            x = std::clamp(x, 0, width - 1);
            source[n++] = c * height * width + y * width + x;
          }
        }
      }
    }
  }
  Matrix v(channels * kernel * kernel, ho * wo);
  for (std::size_t i = 0; i < source.size(); ++i) {
    v.data[i] = source[i] < 0 ? 0.0 : a.value().data[source[i]];
  }
  const int ia = a.id();
  return t.Push(std::move(v), {ia},
                [ia, source = std::move(source)](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  Matrix& d = t.grad_accumulator(ia);
                  for (std::size_t i = 0; i < source.size(); ++i) {
                    if (source[i] >= 0) d.data[source[i]] += g.data[i];
                  }
                });
}

Var AvgPool2(Var a, int height, int width) {
  Tape& t = *a.tape();
  RequireShape(a.cols() == height * width && height % 2 == 0 && width % 2 == 0,
               "avgpool2");
  const int ho = height / 2, wo = width / 2;
  Matrix v(a.rows(), ho * wo);
  for (int c = 0; c < a.rows(); ++c) {
    for (int y = 0; y < ho; ++y) {
      for (int x = 0; x < wo; ++x) {
        double s = 0.0;
        for (int dy = 0; dy < 2; ++dy) {
          for (int dx = 0; dx < 2; ++dx) {
            s += a.value().at(c, (2 * y + dy) * width + 2 * x + dx);
          }
        }
        v.at(c, y * wo + x) = 0.25 * s;
      }
    }
  }
  const int ia = a.id();
  return t.Push(std::move(v), {ia}, [ia, width, ho, wo](Tape& t, int self) {
    const Matrix& g = t.grad(self);
    Matrix& d = t.grad_accumulator(ia);
    for (int c = 0; c < g.rows; ++c) {
      for (int y = 0; y < ho; ++y) {
        for (int x = 0; x < wo; ++x) {
          const double gv = 0.25 * g.at(c, y * wo + x);
          for (int dy = 0; dy < 2; ++dy) {
            for (int dx = 0; dx < 2; ++dx) {
              d.at(c, (2 * y + dy) * width + 2 * x + dx) += gv;
            }
          }
        }
      }
    }
  });
}

Var UpsampleNearest(Var a, int height, int width, int factor) {
  Tape& t = *a.tape();
  RequireShape(a.cols() == height * width && factor >= 1, "upsample");
  const int ho = height * factor, wo = width * factor;
  Matrix v(a.rows(), ho * wo);
  for (int c = 0; c < a.rows(); ++c) {
    for (int y = 0; y < ho; ++y) {
      for (int x = 0; x < wo; ++x) {
        v.at(c, y * wo + x) = a.value().at(c, (y / factor) * width + x / factor);
      }
    }
  }
  const int ia = a.id();
  return t.Push(std::move(v), {ia},
                [ia, width, factor, ho, wo](Tape& t, int self) {
                  const Matrix& g = t.grad(self);
                  Matrix& d = t.grad_accumulator(ia);
                  for (int c = 0; c < g.rows; ++c) {
                    for (int y = 0; y < ho; ++y) {
                      for (int x = 0; x < wo; ++x) {
                        d.at(c, (y / factor) * width + x / factor) +=
                            g.at(c, y * wo + x);
                      }
                    }
                  }
                });
}

Var DotConst(Var a, const Matrix& r) {
  Tape& t = *a.tape();
  RequireShape(a.value().SameShape(r), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += a.value().data[i] * r.data[i];
  const int ia = a.id();
  return t.Push(Matrix(1, 1, s), {ia}, [ia, r](Tape& t, int self) {
    const double g = t.grad(self).data[0];
    Matrix& d = t.grad_accumulator(ia);
    for (std::size_t i = 0; i < d.size(); ++i) d.data[i] += g * r.data[i];
  });
}

}  // namespace ad
}  // namespace polsar
