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

#ifndef POLSAR_TESTS_SUPPORT_FUSION_ORACLE_HPP_
#define POLSAR_TESTS_SUPPORT_FUSION_ORACLE_HPP_

// Plain-loop reference implementations of the fusion kernel, written against
// raw parameter arrays only.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polsar/common/tensor3.hpp"
#include "polsar/fusion/weights.hpp"

namespace polsar::oracle {

using Grid = std::vector<std::vector<double>>;  // [rows][cols]

inline Grid Zeros(int r, int c) { return Grid(r, std::vector<double>(c, 0.0)); }

inline Grid FromMatrix(const Matrix& m) {
  Grid g = Zeros(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) g[r][c] = m.data[r * m.cols + c];
  }
  return g;
}

inline Grid Param(const KernelWeights& w, const std::string& name) {
  return FromMatrix(w.Get(name));
}

// Feature map [C][H*W] from a tensor and back.
inline Grid Map(const Tensor3& t) {
  Grid g = Zeros(t.channels, t.height * t.width);
  for (int c = 0; c < t.channels; ++c) {
    for (int y = 0; y < t.height; ++y) {
      for (int x = 0; x < t.width; ++x) g[c][y * t.width + x] = t.at(c, y, x);
    }
  }
  return g;
}

inline Tensor3 ToTensor(const Grid& g, int h, int w) {
  Tensor3 t(static_cast<int>(g.size()), h, w);
  for (int c = 0; c < t.channels; ++c) {
    for (int i = 0; i < h * w; ++i) t.at(c, i / w, i % w) = g[c][i];
  }
  return t;
}

inline Grid Transpose(const Grid& a) {
  Grid t = Zeros(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[0].size(); ++c) t[c][r] = a[r][c];
  }
  return t;
}

inline Grid Product(const Grid& a, const Grid& b) {
  Grid out = Zeros(static_cast<int>(a.size()), static_cast<int>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < b.size(); ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  }
  return out;
}

inline Grid Plus(Grid a, const Grid& b, double scale = 1.0) {
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] += scale * b[r][c];
  }
  return a;
}

inline double Gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0))); }

inline void GeluInPlace(Grid& a) {
  for (auto& row : a) {
    for (double& v : row) v = Gelu(v);
  }
}

inline void SoftmaxRowsInPlace(Grid& a) {
  for (auto& row : a) {
    const double m = *std::max_element(row.begin(), row.end());
    double s = 0;
    for (double& v : row) s += (v = std::exp(v - m));
    for (double& v : row) v /= s;
  }
}

// Normalizes each row over its columns.
inline Grid NormRows(const Grid& a, const Grid& gain, const Grid& bias) {
  Grid out = a;
  for (auto& row : out) {
    double mean = 0, var = 0;
    for (double v : row) mean += v;
    mean /= row.size();
    for (double v : row) var += (v - mean) * (v - mean);
    var /= row.size();
    const double inv = 1.0 / std::sqrt(var + 1e-5);
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = (row[c] - mean) * inv * gain[0][c] + bias[0][c];
    }
  }
  return out;
}

// Direct convolution of a [C][H*W] map; weight columns run (c, ky, kx).
inline Grid Convolve(const Grid& x, int h, int w, const Grid& weight,
                     const Grid& bias, int k, int stride, int pad,
                     bool replicate) {
  const int cin = static_cast<int>(x.size());
  const int ho = (h + 2 * pad - k) / stride + 1;
  const int wo = (w + 2 * pad - k) / stride + 1;
  Grid out = Zeros(static_cast<int>(weight.size()), ho * wo);
  for (std::size_t o = 0; o < weight.size(); ++o) {
    for (int oy = 0; oy < ho; ++oy) {
      for (int ox = 0; ox < wo; ++ox) {
        double s = bias[o][0];
        for (int c = 0; c < cin; ++c) {
          for (int ky = 0; ky < k; ++ky) {
            for (int kx = 0; kx < k; ++kx) {
              int y = oy * stride + ky - pad, xx = ox * stride + kx - pad;
              if (y < 0 || y >= h || xx < 0 || xx >= w) {
                if (!replicate) continue;
                y = std::clamp(y, 0, h - 1);
                xx = std::clamp(xx, 0, w - 1);
              }
              s += weight[o][(c * k + ky) * k + kx] * x[c][y * w + xx];
            }
          }
        }
        out[o][oy * wo + ox] = s;
      }
    }
  }
  return out;
}

inline Grid Pointwise(const KernelWeights& w, const std::string& prefix,
                      const Grid& x, int h, int wd) {
  return Convolve(x, h, wd, Param(w, prefix + ".w"), Param(w, prefix + ".b"), 1,
                  1, 0, false);
}

inline Grid Pool2(const Grid& x, int h, int w) {
  Grid out = Zeros(static_cast<int>(x.size()), (h / 2) * (w / 2));
  for (std::size_t c = 0; c < x.size(); ++c) {
    for (int y = 0; y < h / 2; ++y) {
      for (int xx = 0; xx < w / 2; ++xx) {
        out[c][y * (w / 2) + xx] =
            0.25 * (x[c][2 * y * w + 2 * xx] + x[c][2 * y * w + 2 * xx + 1] +
                    x[c][(2 * y + 1) * w + 2 * xx] +
                    x[c][(2 * y + 1) * w + 2 * xx + 1]);
      }
    }
  }
  return out;
}

inline Tensor3 PatchEmbed(const Tensor3& rgb, const KernelWeights& w) {
  const int p = KernelConfig::kPatch;
  return ToTensor(Convolve(Map(rgb), rgb.height, rgb.width, Param(w, "patch.w"),
                           Param(w, "patch.b"), p, p, 0, false),
                  rgb.height / p, rgb.width / p);
}

inline Tensor3 Ffp(const Tensor3& z1, const Tensor3& z2, const KernelWeights& w) {
  const int h = z1.height, wd = z1.width;
  Grid a = Pointwise(w, "ffp.g1", Map(z1), h, wd);
  Grid s = a;
  SoftmaxRowsInPlace(s);
  const Grid b = Pointwise(w, "ffp.g2", Map(z2), h, wd);
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) a[c][i] = a[c][i] * s[c][i] + b[c][i];
  }
  return ToTensor(Pointwise(w, "ffp.g3", a, h, wd), h, wd);
}

inline Tensor3 FeatureEmbed1(const Tensor3& rgb, const KernelWeights& w) {
  const int h = rgb.height, wd = rgb.width;
  Grid x = Convolve(Map(rgb), h, wd, Param(w, "fe1.w"), Param(w, "fe1.b"), 3, 1, 1,
                    true);
  GeluInPlace(x);
  x = Pool2(Pool2(x, h, wd), h / 2, wd / 2);
  return ToTensor(x, h / 4, wd / 4);
}

inline Grid NormChannels(const KernelWeights& w, const std::string& prefix,
                         const Grid& x) {
  return Transpose(NormRows(Transpose(x), Param(w, prefix + ".gain"),
                            Param(w, prefix + ".bias")));
}

inline Tensor3 FeatureEmbed2(const Tensor3& onehot, const KernelWeights& w) {
  const int h = onehot.height, wd = onehot.width;
  Grid x = Convolve(Map(onehot), h, wd, Param(w, "fe2.conv1.w"),
                    Param(w, "fe2.conv1.b"), 2, 2, 0, false);
  x = NormChannels(w, "fe2.ln1", x);
  GeluInPlace(x);
  x = Convolve(x, h / 2, wd / 2, Param(w, "fe2.conv2.w"), Param(w, "fe2.conv2.b"),
               2, 2, 0, false);
  x = NormChannels(w, "fe2.ln2", x);
  GeluInPlace(x);
  return ToTensor(Pointwise(w, "fe2.proj", x, h / 4, wd / 4), h / 4, wd / 4);
}

// Tokens [L][C] times a right-multiplied [C][D] weight plus a [1][D] bias.
inline Grid Linear(const Grid& tokens, const Grid& weight, const Grid& bias) {
  Grid out = Product(tokens, weight);
  for (auto& row : out) {
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += bias[0][c];
  }
  return out;
}

inline std::pair<Grid, Grid> Split(const KernelWeights& w, const std::string& prefix,
                                   const Grid& tokens) {
  const Grid y = Linear(tokens, Param(w, prefix + ".w"), Param(w, prefix + ".b"));
  const std::size_t c = y[0].size() / 2;
  Grid a, b;
  for (const auto& row : y) {
    a.emplace_back(row.begin(), row.begin() + c);
    b.emplace_back(row.begin() + c, row.end());
  }
  return {a, b};
}

inline Grid Attention(const KernelWeights& w, const std::string& prefix,
                      const Grid& q, const Grid& kv) {
  const Grid qp = Linear(q, Param(w, prefix + ".wq"), Param(w, prefix + ".bq"));
  const Grid kp = Linear(kv, Param(w, prefix + ".wk"), Param(w, prefix + ".bk"));
  const Grid vp = Linear(kv, Param(w, prefix + ".wv"), Param(w, prefix + ".bv"));
  const double scale = 1.0 / std::sqrt(static_cast<double>(q[0].size()));
  Grid att = Zeros(static_cast<int>(q.size()), static_cast<int>(kv.size()));
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < kv.size(); ++j) {
      double s = 0;
      for (std::size_t c = 0; c < qp[i].size(); ++c) s += qp[i][c] * kp[j][c];
      att[i][j] = s * scale;
    }
  }
  SoftmaxRowsInPlace(att);
  return Product(att, vp);
}

struct Prompts {
  Grid sparse;  // [N][C]
  Grid dense;   // [HW][C]
};

inline Prompts Sfp(const Tensor3& x1, const Tensor3& x2, const Tensor3& x3,
                   const KernelWeights& w) {
  const Grid t1 = Transpose(Map(x1)), t2 = Transpose(Map(x2)), t3 = Transpose(Map(x3));
  const auto [t1m, t1n] = Split(w, "sfp.split1", t1);
  const auto [t2m, t2n] = Split(w, "sfp.split2", t2);
  const auto [t3m, t3n] = Split(w, "sfp.split3", t3);
  const Grid v1 = Attention(w, "sfp.ca_v", t1m, t3m);
  const Grid v2 = Attention(w, "sfp.ca_v", t2m, t3m);
  const Grid u1 = Attention(w, "sfp.ca_u", t3n, t1n);
  const Grid u2 = Attention(w, "sfp.ca_u", t3n, t2n);

  const Grid mixed = Plus(Plus(Zeros(static_cast<int>(t1.size()),
                                     static_cast<int>(t1[0].size())),
                               Plus(v1, u1), 0.5),
                          t1);
  Grid s = Product(Param(w, "sfp.linear1.w"), mixed);
  const Grid b1 = Param(w, "sfp.linear1.b");
  for (std::size_t n = 0; n < s.size(); ++n) {
    for (double& v : s[n]) v += b1[n][0];
  }
  Prompts p;
  p.sparse = NormRows(s, Param(w, "sfp.norm_s.gain"), Param(w, "sfp.norm_s.bias"));
  Grid cat = v2;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    cat[i].insert(cat[i].end(), u2[i].begin(), u2[i].end());
  }
  const Grid d = Plus(Linear(cat, Param(w, "sfp.linear2.w"), Param(w, "sfp.linear2.b")),
                      t2);
  p.dense = NormRows(d, Param(w, "sfp.norm_d.gain"), Param(w, "sfp.norm_d.bias"));
  return p;
}

inline Tensor3 ToyEncoder(const Tensor3& p_f, const Tensor3& z1, const Tensor3& z2,
                          const KernelWeights& w) {
  Grid stacked = Map(p_f);
  for (const auto& row : Map(z1)) stacked.push_back(row);
  for (const auto& row : Map(z2)) stacked.push_back(row);
  Grid tokens = Transpose(Pointwise(w, "enc.proj", stacked, p_f.height, p_f.width));
  for (const std::string block : {"enc.block0", "enc.block1"}) {
    const Grid normed = NormRows(tokens, Param(w, block + ".ln.gain"),
                                 Param(w, block + ".ln.bias"));
    tokens = Plus(tokens, Attention(w, block + ".attn", normed, normed));
  }
  return ToTensor(Transpose(tokens), p_f.height, p_f.width);
}

struct Decoded {
  Tensor3 scores;
  Tensor3 f_att;
};

inline Decoded MinimalDecoder(const Tensor3& f1, const Tensor3& f2,
                              const Tensor3& f_fused, const Prompts& prompts,
                              const KernelWeights& w) {
  const int h = f1.height, wd = f1.width, p = KernelConfig::kPatch;
  const Grid img = Plus(Transpose(Plus(Plus(Map(f1), Map(f2)), Map(f_fused))),
                        prompts.dense);
  const Grid tokens =
      Plus(prompts.sparse, Attention(w, "dec.ca_t2i", prompts.sparse, img));
  const Grid att = Plus(img, Attention(w, "dec.ca_i2t", img, tokens));
  Decoded d;
  d.f_att = ToTensor(Transpose(att), h, wd);
  d.scores = Tensor3(static_cast<int>(tokens.size()), h * p, wd * p);
  for (std::size_t n = 0; n < tokens.size(); ++n) {
    for (int y = 0; y < h * p; ++y) {
      for (int x = 0; x < wd * p; ++x) {
        double s = 0;
        for (std::size_t c = 0; c < tokens[n].size(); ++c) {
          s += tokens[n][c] * att[(y / p) * wd + x / p][c];
        }
        d.scores.at(static_cast<int>(n), y, x) = s;
      }
    }
  }
  return d;
}

inline double CrossEntropy(const Grid& pred, const Grid& labels) {
  double total = 0;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    for (std::size_t k = 0; k < pred[s].size(); ++k) {
      if (labels[s][k] != 0) total -= labels[s][k] * std::log(pred[s][k]);
    }
  }
  return total / pred.size();
}

inline double Focal(const Grid& pred, const Grid& labels,
                    const std::vector<double>& proportions, double gamma) {
  double total = 0;
  for (std::size_t s = 0; s < pred.size(); ++s) {
    for (std::size_t k = 0; k < pred[s].size(); ++k) {
      if (labels[s][k] == 0) continue;
      total -= labels[s][k] / proportions[k] * std::pow(1 - pred[s][k], gamma) *
               std::log(pred[s][k]);
    }
  }
  return total / pred.size();
}

inline double MaxAbsDiff(const Grid& a, const Grid& b) {
  double m = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      m = std::max(m, std::abs(a[r][c] - b[r][c]));
    }
  }
  return m;
}

inline double MaxAbsDiff(const Tensor3& a, const Tensor3& b) {
  if (!a.SameShape(b)) return INFINITY;
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

inline Tensor3 RandomTensor(std::uint64_t seed, int c, int h, int w,
                            double lo = -1.0, double hi = 1.0) {
  std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
  Tensor3 t(c, h, w);
  for (double& v : t.data) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v = lo + (hi - lo) * static_cast<double>(s >> 11) / 9007199254740992.0;
  }
  return t;
}

}  // namespace polsar::oracle

#endif  // POLSAR_TESTS_SUPPORT_FUSION_ORACLE_HPP_
