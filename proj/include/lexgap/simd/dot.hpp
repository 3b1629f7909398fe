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

#pragma once

#include <cstddef>
#include <string_view>

namespace lexgap::simd {

/// Instruction sets a kernel may be built for.
enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Variant picked at first use: the widest available one, unless the
/// environment variable LEXGAP_SIMD=scalar forces the reference kernel.
Isa active_isa();

/// Float vectors, double accumulation. Every variant sums products into eight
/// interleaved lanes (element i goes to lane i % 8) and reduces them as
/// ((l0+l4) + (l1+l5)) + ((l2+l6) + (l3+l7)). Products of two floats are exact
/// in double, so all variants return bitwise identical results.
double dot(const float* a, const float* b, std::size_t n);
double dot_scalar(const float* a, const float* b, std::size_t n);
double dot_avx2(const float* a, const float* b, std::size_t n);  // requires isa_available(Isa::avx2)

/// out[r] = dot(query, rows + r * dim, dim) for r in [0, count).
void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t dim, double* out);
void dot_rows(Isa isa, const float* query, const float* rows, std::size_t count, std::size_t dim, double* out);

namespace detail {

inline constexpr std::size_t kLanes = 8;

inline double reduce_lanes(const double* acc)
{
    return ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
}

}  // namespace detail

}  // namespace lexgap::simd
