#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dccse {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline BytesView as_view(const Bytes& b) {
    return BytesView(b.data(), b.size());
}

std::string to_hex(BytesView b);

inline std::string to_hex(const Bytes& b) { return to_hex(as_view(b)); }

void append_u32_be(Bytes& out, std::uint32_t v);
void append_u64_be(Bytes& out, std::uint64_t v);

// Reads a big-endian u32 at offset and advances it; throws DecodeError past end.
std::uint32_t read_u32_be(BytesView in, std::size_t& offset);

// Next `n` bytes at offset; throws DecodeError past end.
Bytes read_exact(BytesView in, std::size_t& offset, std::size_t n);

}  // namespace dccse
