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

#include <immintrin.h>

#include "lexgap/simd/dot.hpp"

namespace lexgap::simd {

double dot_avx2(const float* a, const float* b, std::size_t n)
{
    __m256d lo = _mm256_setzero_pd();  // lanes 0..3
    __m256d hi = _mm256_setzero_pd();  // lanes 4..7
    const std::size_t main = n - n % detail::kLanes;
    for (std::size_t i = 0; i < main; i += detail::kLanes) {
        __m256 va = _mm256_loadu_ps(a + i);
        __m256 vb = _mm256_loadu_ps(b + i);
        __m256d a_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
        __m256d a_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
        __m256d b_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(vb));
        __m256d b_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1));
        lo = _mm256_add_pd(lo, _mm256_mul_pd(a_lo, b_lo));
        hi = _mm256_add_pd(hi, _mm256_mul_pd(a_hi, b_hi));
    }
    alignas(32) double acc[detail::kLanes];
    _mm256_store_pd(acc, lo);
    _mm256_store_pd(acc + 4, hi);
    for (std::size_t i = main; i < n; ++i) {
        acc[i % detail::kLanes] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return detail::reduce_lanes(acc);
}

}  // namespace lexgap::simd
