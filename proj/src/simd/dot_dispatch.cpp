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

#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "lexgap/simd/dot.hpp"

namespace lexgap::simd {

#ifndef LEXGAP_HAVE_AVX2
double dot_avx2(const float*, const float*, std::size_t)
{
    throw std::logic_error("dot_avx2: not compiled into this build");
}
#endif

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "?";
}

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(LEXGAP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    }
    return false;
}

namespace {

using DotFn = double (*)(const float*, const float*, std::size_t);

DotFn kernel(Isa isa) { return isa == Isa::avx2 ? &dot_avx2 : &dot_scalar; }

Isa choose()
{
    const char* forced = std::getenv("LEXGAP_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
        return Isa::scalar;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa()
{
    static const Isa isa = choose();
    return isa;
}

double dot(const float* a, const float* b, std::size_t n)
{
    static const DotFn fn = kernel(active_isa());
    return fn(a, b, n);
}

void dot_rows(Isa isa, const float* query, const float* rows, std::size_t count, std::size_t dim, double* out)
{
    if (!isa_available(isa)) {
        throw std::invalid_argument("dot_rows: instruction set not available");
    }
    DotFn fn = kernel(isa);
    for (std::size_t r = 0; r < count; ++r) {
        out[r] = fn(query, rows + r * dim, dim);
    }
}

void dot_rows(const float* query, const float* rows, std::size_t count, std::size_t dim, double* out)
{
    dot_rows(active_isa(), query, rows, count, dim, out);
}

}  // namespace lexgap::simd
