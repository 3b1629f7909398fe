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

#include "binary_io.hpp"

#include "lexgap/error.hpp"

namespace lexgap::binio {

namespace {

template <typename T>
void put_le(std::ostream& out, T v)
{
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>(v >> (8 * i));
    }
    out.write(reinterpret_cast<const char*>(buf), sizeof buf);
}

template <typename T>
T get_le(const unsigned char* buf)
{
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<T>(buf[i]) << (8 * i);
    }
    return v;
}

}  // namespace

void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }
void put_u32(std::ostream& out, std::uint32_t v) { put_le(out, v); }
void put_u64(std::ostream& out, std::uint64_t v) { put_le(out, v); }
void put_f32(std::ostream& out, float v) { put_le(out, std::bit_cast<std::uint32_t>(v)); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
void put_bytes(std::ostream& out, std::string_view bytes) { out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())); }

void put_string(std::ostream& out, std::string_view s)
{
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    put_bytes(out, s);
}

void Reader::read(void* dst, std::size_t n)
{
    if (n == 0) {
        return;
    }
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
        throw ValidationError(what_ + ": truncated input");
    }
}

std::uint8_t Reader::u8()
{
    unsigned char b = 0;
    read(&b, 1);
    return b;
}

std::uint32_t Reader::u32()
{
    unsigned char b[4];
    read(b, 4);
    return get_le<std::uint32_t>(b);
}

std::uint64_t Reader::u64()
{
    unsigned char b[8];
    read(b, 8);
    return get_le<std::uint64_t>(b);
}

float Reader::f32() { return std::bit_cast<float>(u32()); }
double Reader::f64() { return std::bit_cast<double>(u64()); }

std::string Reader::bytes(std::size_t n)
{
    std::string s(n, '\0');
    read(s.data(), n);
    return s;
}

std::string Reader::string() { return bytes(u32()); }

bool Reader::at_end() { return in_.peek() == std::char_traits<char>::eof(); }

}  // namespace lexgap::binio
