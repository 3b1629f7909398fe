// Copyright 2026 The lexgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexgap/simd/dot.hpp"

namespace lexgap::simd {

double dot_scalar(const float* a, const float* b, std::size_t n)
{
    double acc[detail::kLanes] = {};
    for (std::size_t i = 0; i < n; ++i) {
        acc[i % detail::kLanes] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return detail::reduce_lanes(acc);
}

}  // namespace lexgap::simd
