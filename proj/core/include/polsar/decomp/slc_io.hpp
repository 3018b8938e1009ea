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

#ifndef POLSAR_DECOMP_SLC_IO_HPP_
#define POLSAR_DECOMP_SLC_IO_HPP_

#include <filesystem>

#include "polsar/decomp/fields.hpp"

namespace polsar {

// SLC container: the text line "PSLC1 <width> <height>\n" followed by the
// HH, HV and VV payloads, each width*height little-endian float32
// (real, imaginary) pairs in row-major order.
//
// Errors: IoError (missing/unreadable file), VersionError (PSLC<n> with
// n != 1), SizeMismatchError (payload length disagrees with the header),
// ValidationError (anything else malformed).
ScatteringField LoadSlc(const std::filesystem::path& path);
void WriteSlc(const std::filesystem::path& path, const ScatteringField& field);

}  // namespace polsar

#endif  // POLSAR_DECOMP_SLC_IO_HPP_
