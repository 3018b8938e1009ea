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

#ifndef POLSAR_DECOMP_PAULI_HPP_
#define POLSAR_DECOMP_PAULI_HPP_

#include "polsar/common/png_io.hpp"
#include "polsar/decomp/fields.hpp"

namespace polsar {

PauliField PauliVector(const ScatteringField& field);

// Boxcar multilook of k_P k_P^H. The window is clamped at the image edges,
// so border pixels average over fewer samples and the output keeps the input
// dimensions. |window| must be odd, >= 1 and <= min(width, height).
CoherencyField Coherency(const PauliField& pauli, int window);

SpanField Span(const CoherencyField& coherency);

struct PauliRgbOptions {
  double clip_lo = 2.0;   // percentile
  double clip_hi = 98.0;  // percentile
};

// dB-scaled (20 log10(|.| + 1e-10)), percentile-clipped, 8-bit Pauli
// rendering with R = |k2|, G = |k3|, B = |k1|. Percentiles are taken over
// pixels with non-zero power; zero-power pixels render black.
Image8 PauliRgb(const PauliField& pauli, const PauliRgbOptions& options = {});

// Percentile with linear interpolation between order statistics
// (position p/100 * (n - 1)). |sorted| must be ascending and non-empty.
double Percentile(const std::vector<double>& sorted, double p);

}  // namespace polsar

#endif  // POLSAR_DECOMP_PAULI_HPP_
