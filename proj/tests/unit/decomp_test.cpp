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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"
#include "polsar/common/png_io.hpp"
#include "polsar/common/stack_io.hpp"
#include "polsar/decomp/pauli.hpp"
#include "polsar/decomp/slc_io.hpp"
#include "polsar/decomp/synthetic.hpp"
#include "polsar/eigen/hermitian3.hpp"
#include "support/test_support.hpp"

namespace polsar {
namespace {

using testing::TempDir;

ScatteringField SinglePixel(cdouble hh, cdouble hv, cdouble vv) {
  ScatteringField f = ScatteringField::Zeros(1, 1);
  f.s_hh[0] = std::complex<float>(hh);
  f.s_hv[0] = std::complex<float>(hv);
  f.s_vv[0] = std::complex<float>(vv);
  return f;
}

ScatteringField RandomField(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> n(0.0f, 1.0f);
  ScatteringField f = ScatteringField::Zeros(w, h);
  for (auto* ch : {&f.s_hh, &f.s_hv, &f.s_vv}) {
    for (auto& s : *ch) s = {n(rng), n(rng)};
  }
  return f;
}

void ExpectNear(const Matrix3c& a, const Matrix3c& b, double tol) {
  for (int i = 0; i < 9; ++i) {
    EXPECT_NEAR(std::abs(a.a[i] - b.a[i]), 0.0, tol) << "entry " << i;
  }
}

TEST(SlcIo, ZeroPayloadLoadsZeros) {
  TempDir dir;
  const auto path = dir / "zero.pslc";
  {
    std::ofstream out(path, std::ios::binary);
    out << "PSLC1 2 2\n";
    out << std::string(3 * 4 * 8, '\0');
  }
  const ScatteringField f = LoadSlc(path);
  EXPECT_EQ(f, ScatteringField::Zeros(2, 2));
}

TEST(SlcIo, HeaderLargerThanPayloadIsSizeMismatch) {
  TempDir dir;
  const auto path = dir / "bad.pslc";
  {
    std::ofstream out(path, std::ios::binary);
    out << "PSLC1 4 4\n";
    out << std::string(3 * 9 * 8, '\0');
  }
  EXPECT_THROW(LoadSlc(path), SizeMismatchError);
}

TEST(SlcIo, RoundTripIsBitIdentical) {
  TempDir dir;
  const ScatteringField f = RandomField(7, 5, 11);
  WriteSlc(dir / "r.pslc", f);
  EXPECT_EQ(LoadSlc(dir / "r.pslc"), f);
}

TEST(SlcIo, MissingFileIsIoError) {
  TempDir dir;
  EXPECT_THROW(LoadSlc(dir / "absent.pslc"), IoError);
}

TEST(SlcIo, OtherRevisionIsVersionError) {
  TempDir dir;
  {
    std::ofstream out(dir / "v2.pslc", std::ios::binary);
    out << "PSLC2 1 1\n" << std::string(24, '\0');
  }
  EXPECT_THROW(LoadSlc(dir / "v2.pslc"), VersionError);
  {
    std::ofstream out(dir / "junk.pslc", std::ios::binary);
    out << "HELLO 1 1\n" << std::string(24, '\0');
  }
  EXPECT_THROW(LoadSlc(dir / "junk.pslc"), ValidationError);
}

TEST(Pauli, PureMechanisms) {
  const double r2 = std::numbers::sqrt2;
  const PauliField odd = PauliVector(SinglePixel(1.0, 0.0, 1.0));
  EXPECT_NEAR(std::abs(odd.k[0][0] - r2), 0.0, 1e-12);
  EXPECT_EQ(odd.k[0][1], 0.0);
  EXPECT_EQ(odd.k[0][2], 0.0);

  const PauliField dbl = PauliVector(SinglePixel(1.0, 0.0, -1.0));
  EXPECT_EQ(dbl.k[0][0], 0.0);
  EXPECT_NEAR(std::abs(dbl.k[0][1] - r2), 0.0, 1e-12);

  const PauliField cross = PauliVector(SinglePixel(0.0, 1.0, 0.0));
  EXPECT_NEAR(std::abs(cross.k[0][2] - r2), 0.0, 1e-12);
  EXPECT_EQ(cross.k[0][0], 0.0);
}

TEST(Pauli, PreservesTotalPower) {
  const ScatteringField f = RandomField(6, 4, 3);
  const PauliField p = PauliVector(f);
  for (std::size_t i = 0; i < f.PixelCount(); ++i) {
    const double power = std::norm(cdouble(f.s_hh[i])) +
                         2.0 * std::norm(cdouble(f.s_hv[i])) +
                         std::norm(cdouble(f.s_vv[i]));
    EXPECT_NEAR(p.k[i].SquaredNorm(), power, 1e-9 * (1.0 + power));
  }
}

TEST(Coherency, RankOneOuterProduct) {
  const PauliField p = PauliVector(SinglePixel(1.0, 0.0, 1.0));
  const CoherencyField t = Coherency(p, 1);
  ExpectNear(t.t[0], Matrix3c::Diagonal(2, 0, 0), 1e-12);
}

TEST(Coherency, TraceEqualsPowerAtWindowOne) {
  const PauliField p = PauliVector(RandomField(5, 5, 9));
  const CoherencyField t = Coherency(p, 1);
  for (std::size_t i = 0; i < p.PixelCount(); ++i) {
    EXPECT_NEAR(t.t[i].Trace(), p.k[i].SquaredNorm(), 1e-12);
  }
}

TEST(Coherency, ConstantFieldAveragesToSinglePixel) {
  ScatteringField f = ScatteringField::Zeros(3, 3);
  for (std::size_t i = 0; i < 9; ++i) {
    f.s_hh[i] = {0.3f, -0.2f};
    f.s_hv[i] = {0.1f, 0.4f};
    f.s_vv[i] = {-0.5f, 0.25f};
  }
  const PauliField p = PauliVector(f);
  const CoherencyField t3 = Coherency(p, 3);
  const CoherencyField t1 = Coherency(p, 1);
  for (std::size_t i = 0; i < 9; ++i) ExpectNear(t3.t[i], t1.t[0], 1e-12);
}

TEST(Coherency, MatchesClampedBoxcarOracle) {
  const int w = 7, h = 6, win = 5;
  const PauliField p = PauliVector(RandomField(w, h, 21));
  const CoherencyField t = Coherency(p, win);
  EXPECT_EQ(t.looks, win);
  const int r = win / 2;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Matrix3c acc;
      int n = 0;
      for (int yy = std::max(0, y - r); yy <= std::min(h - 1, y + r); ++yy) {
        for (int xx = std::max(0, x - r); xx <= std::min(w - 1, x + r); ++xx) {
          acc += Matrix3c::Outer(p.k[yy * w + xx]);
          ++n;
        }
      }
      ExpectNear(t.at(x, y), acc * (1.0 / n), 1e-9);
    }
  }
}

TEST(Coherency, OutputIsHermitianPsd) {
  const CoherencyField t = Coherency(PauliVector(RandomField(8, 8, 4)), 3);
  for (const auto& m : t.t) {
    EXPECT_LT(HermitianDefect(m), 1e-12);
    const EigenDecomposition e = EigenHermitian3(m);
    EXPECT_GE(e.values[2], -1e-9 * m.Trace());
  }
}

TEST(Coherency, RejectsBadWindows) {
  const PauliField p = PauliVector(RandomField(4, 4, 1));
  EXPECT_THROW(Coherency(p, 2), ValidationError);
  EXPECT_THROW(Coherency(p, 0), ValidationError);
  EXPECT_THROW(Coherency(p, 5), ValidationError);
}

TEST(Span, Examples) {
  CoherencyField c;
  c.width = 2;
  c.height = 1;
  c.t = {Matrix3c::Diagonal(2, 0, 0), Matrix3c::Identity() * (1.0 / 3.0)};
  const SpanField s = Span(c);
  EXPECT_DOUBLE_EQ(s.span[0], 2.0);
  EXPECT_NEAR(s.span[1], 1.0, 1e-15);
}

TEST(Span, EqualsEigenvalueSum) {
  std::mt19937_64 rng(5);
  CoherencyField c;
  c.width = 50;
  c.height = 1;
  for (int i = 0; i < 50; ++i) c.t.push_back(testing::RandomHermitianPsd(rng));
  const SpanField s = Span(c);
  for (int i = 0; i < 50; ++i) {
    const auto e = EigenHermitian3(c.t[i]);
    EXPECT_NEAR(s.span[i], e.values[0] + e.values[1] + e.values[2],
                1e-10 * s.span[i]);
  }
}

TEST(PauliRgb, AllZeroIsBlack) {
  const Image8 img = PauliRgb(PauliVector(ScatteringField::Zeros(3, 2)));
  EXPECT_TRUE(std::all_of(img.pixels.begin(), img.pixels.end(),
                          [](auto v) { return v == 0; }));
}

TEST(PauliRgb, OnlyOddComponentLightsBlue) {
  ScatteringField f = ScatteringField::Zeros(4, 1);
  for (int i = 0; i < 4; ++i) {
    f.s_hh[i] = {0.5f * (i + 1), 0.0f};
    f.s_vv[i] = f.s_hh[i];
  }
  const Image8 img = PauliRgb(PauliVector(f));
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(img.pixels[3 * i + 0], 0);
    EXPECT_EQ(img.pixels[3 * i + 1], 0);
  }
  EXPECT_GT(img.pixels[3 * 3 + 2], 0);
}

// Reference quantizer written independently of the library.
std::uint8_t ReferenceQuantize(std::vector<double> values, double v, double lo_p,
                               double hi_p) {
  std::sort(values.begin(), values.end());
  auto pct = [&](double p) {
    const double pos = p / 100.0 * (values.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const std::size_t j = std::min(i + 1, values.size() - 1);
    return values[i] + (pos - i) * (values[j] - values[i]);
  };
  const double lo = pct(lo_p), hi = pct(hi_p);
  double q = (v - lo) / (hi - lo) * 255.0;
  q = std::min(255.0, std::max(0.0, q));
  return static_cast<std::uint8_t>(std::floor(q + 0.5));
}

TEST(PauliRgb, FourPixelScalarOracle) {
  ScatteringField f = ScatteringField::Zeros(2, 2);
  const float hh[4] = {1.0f, 0.2f, 3.0f, 0.7f};
  const float vv[4] = {0.5f, -0.9f, 1.0f, 0.1f};
  const float hv[4] = {0.05f, 0.3f, 0.01f, 1.2f};
  for (int i = 0; i < 4; ++i) {
    f.s_hh[i] = {hh[i], 0.1f * i};
    f.s_vv[i] = {vv[i], -0.05f * i};
    f.s_hv[i] = {hv[i], 0.0f};
  }
  const PauliField p = PauliVector(f);
  const Image8 img = PauliRgb(p, {2.0, 98.0});
  const int source[3] = {1, 2, 0};
  for (int c = 0; c < 3; ++c) {
    std::vector<double> db(4);
    for (int i = 0; i < 4; ++i) {
      db[i] = 20.0 * std::log10(std::abs(p.k[i][source[c]]) + 1e-10);
    }
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(img.pixels[3 * i + c], ReferenceQuantize(db, db[i], 2.0, 98.0))
          << "channel " << c << " pixel " << i;
    }
  }
}

TEST(PauliRgb, ZeroPowerPixelsDoNotSetTheClip) {
  ScatteringField f = RandomField(10, 10, 8);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 3; ++x) {
      f.s_hh[y * 10 + x] = f.s_hv[y * 10 + x] = f.s_vv[y * 10 + x] = {};
    }
  }
  ScatteringField valid = ScatteringField::Zeros(7, 10);
  for (int y = 0; y < 10; ++y) {
    for (int x = 3; x < 10; ++x) {
      valid.s_hh[y * 7 + x - 3] = f.s_hh[y * 10 + x];
      valid.s_hv[y * 7 + x - 3] = f.s_hv[y * 10 + x];
      valid.s_vv[y * 7 + x - 3] = f.s_vv[y * 10 + x];
    }
  }
  const Image8 full = PauliRgb(PauliVector(f));
  const Image8 cropped = PauliRgb(PauliVector(valid));
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      for (int c = 0; c < 3; ++c) {
        const auto v = full.pixels[3 * (y * 10 + x) + c];
        if (x < 3) {
          EXPECT_EQ(v, 0);
        } else {
          EXPECT_EQ(v, cropped.pixels[3 * (y * 7 + x - 3) + c]);
        }
      }
    }
  }
}

TEST(Synthetic, SeedDeterminesScene) {
  SynthConfig cfg;
  cfg.width = 24;
  cfg.height = 16;
  cfg.seed = 42;
  const SyntheticScene a = GenerateScene(cfg);
  const SyntheticScene b = GenerateScene(cfg);
  EXPECT_EQ(a.field, b.field);
  EXPECT_EQ(a.truth, b.truth);
  cfg.seed = 43;
  EXPECT_FALSE(GenerateScene(cfg).field == a.field);
}

TEST(Synthetic, NoDataStripIsZeroAndInvalid) {
  SynthConfig cfg;
  cfg.width = 20;
  cfg.height = 8;
  cfg.nodata_columns = 3;
  const SyntheticScene s = GenerateScene(cfg);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 20; ++x) {
      const std::size_t i = y * 20 + x;
      if (x < 3) {
        EXPECT_EQ(s.field.s_hh[i], std::complex<float>());
        EXPECT_FALSE(s.truth.valid(i));
      } else {
        EXPECT_TRUE(s.truth.valid(i));
      }
    }
  }
}

TEST(Synthetic, NoiselessMechanismsAreAligned) {
  SynthConfig cfg;
  cfg.width = 30;
  cfg.height = 4;
  cfg.nodata_columns = 0;
  cfg.snr_db = std::numeric_limits<double>::infinity();
  const SyntheticScene s = GenerateScene(cfg);
  const PauliField p = PauliVector(s.field);
  for (std::size_t i = 0; i < p.PixelCount(); ++i) {
    const Vector3c u = MechanismDirection(static_cast<PrimaryType>(s.truth.label[i]));
    const double overlap = std::norm(Dot(u, p.k[i]));
    EXPECT_NEAR(overlap, p.k[i].SquaredNorm(), 1e-5 * (1 + overlap));
  }
}

TEST(StackIo, RoundTripThroughFloat32) {
  TempDir dir;
  FloatStack s;
  s.kind = "demo";
  s.width = 3;
  s.height = 2;
  s.channels = {"a", "b"};
  s.data = {0.5, 1.0, -2.0, 3.25, 0.0, 8.0, 1.5, -0.25, 4.0, 2.0, 6.0, 7.0};
  const auto manifest = WriteFloatStack(dir / "stack", s);
  const FloatStack r = ReadFloatStack(manifest);
  EXPECT_EQ(r.kind, s.kind);
  EXPECT_EQ(r.channels, s.channels);
  EXPECT_EQ(r.data, s.data);
  EXPECT_EQ(std::filesystem::file_size(dir / "stack.f32"), 12u * 4u);
}

TEST(PngIo, RgbRoundTrip) {
  TempDir dir;
  Image8 img;
  img.width = 3;
  img.height = 2;
  img.pixels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18};
  WritePng(dir / "a.png", img);
  const Image8 back = ReadPngRgb(dir / "a.png");
  EXPECT_EQ(back.width, 3);
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_THROW(ReadPngRgb(dir / "missing.png"), IoError);
}

TEST(Errors, ExitCodes) {
  EXPECT_EQ(ExitCodeFor(ErrorCategory::kIo), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCategory::kValidation), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCategory::kNumeric), 4);
  EXPECT_EQ(SizeMismatchError("x").category(), ErrorCategory::kValidation);
}

TEST(Parallel, CoversRangeOnceAtAnyThreadCount) {
  for (int threads : {1, 3, 8}) {
    SetThreadCount(threads);
    std::vector<int> hits(1001, 0);
    ParallelFor(0, hits.size(), [&](std::size_t i) { hits[i] += 1; });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  SetThreadCount(1);
}

TEST(Parallel, PropagatesExceptions) {
  SetThreadCount(4);
  EXPECT_THROW(ParallelFor(0, 100,
                           [](std::size_t i) {
                             if (i == 57) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
  SetThreadCount(1);
}

}  // namespace
}  // namespace polsar
