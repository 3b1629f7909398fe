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

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace lexgap::binio {

// Little-endian fixed-width encoding, independent of host byte order.

void put_u8(std::ostream& out, std::uint8_t v);
void put_u32(std::ostream& out, std::uint32_t v);
void put_u64(std::ostream& out, std::uint64_t v);
void put_f32(std::ostream& out, float v);
void put_f64(std::ostream& out, double v);
void put_bytes(std::ostream& out, std::string_view bytes);
/// u32 byte length followed by the bytes.
void put_string(std::ostream& out, std::string_view s);

/// Readers throw ValidationError("<what>: truncated ...") at end of input.
class Reader {
  public:
    Reader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    float f32();
    double f64();
    std::string bytes(std::size_t n);
    std::string string();
    /// True when no byte is left.
    bool at_end();

  private:
    void read(void* dst, std::size_t n);

    std::istream& in_;
    std::string what_;
};

}  // namespace lexgap::binio
