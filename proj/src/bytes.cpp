#include "dccse/bytes.hpp"

#include "dccse/errors.hpp"

namespace dccse {

std::string to_hex(BytesView b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (std::uint8_t v : b) {
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 0x0f]);
    }
    return out;
}

void append_u32_be(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_u64_be(Bytes& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

std::uint32_t read_u32_be(BytesView in, std::size_t& offset) {
    if (offset + 4 > in.size()) {
        throw DecodeError("truncated input: expected 4-byte integer");
    }
    std::uint32_t v = (static_cast<std::uint32_t>(in[offset]) << 24) |
                      (static_cast<std::uint32_t>(in[offset + 1]) << 16) |
                      (static_cast<std::uint32_t>(in[offset + 2]) << 8) |
                      static_cast<std::uint32_t>(in[offset + 3]);
    offset += 4;
    return v;
}

Bytes read_exact(BytesView in, std::size_t& offset, std::size_t n) {
    if (offset + n > in.size()) {
        throw DecodeError("truncated input");
    }
    Bytes out(in.begin() + static_cast<std::ptrdiff_t>(offset),
              in.begin() + static_cast<std::ptrdiff_t>(offset + n));
    offset += n;
    return out;
}

}  // namespace dccse
