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

#ifndef POLSAR_COMMON_PARALLEL_HPP_
#define POLSAR_COMMON_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace polsar {

// Process-wide worker count used by ParallelFor. Values < 1 reset to 1.
void SetThreadCount(int threads);
int ThreadCount();

// Runs body(i) for i in [begin, end), split into contiguous chunks across
// ThreadCount() workers. Bodies must write disjoint outputs; nothing is
// reduced here, so results never depend on the worker count.
void ParallelFor(std::size_t begin, std::size_t end,
                 const std::function<void(std::size_t)>& body);

}  // namespace polsar

#endif  // POLSAR_COMMON_PARALLEL_HPP_
