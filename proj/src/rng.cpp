#include "dccse/rng.hpp"

#include <algorithm>
#include <cstring>

#include "dccse/errors.hpp"
#include "sodium_init.hpp"

namespace dccse {

namespace {

std::array<std::uint8_t, 32> expand_seed(std::uint64_t seed) {
    detail::ensure_sodium();
    Bytes msg = to_bytes("dccse/seed");
    append_u64_be(msg, seed);
    std::array<std::uint8_t, 32> key{};
    crypto_generichash(key.data(), key.size(), msg.data(), msg.size(), nullptr, 0);
    return key;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(expand_seed(seed)) {}

Rng::Rng(const std::array<std::uint8_t, 32>& key) : key_(key) { detail::ensure_sodium(); }

void Rng::refill() {
    std::uint8_t nonce[8];
    for (int i = 0; i < 8; ++i) {
        nonce[i] = static_cast<std::uint8_t>(block_ >> (8 * i));
    }
    crypto_stream_chacha20(buf_.data(), buf_.size(), nonce, key_.data());
    ++block_;
    pos_ = 0;
}

void Rng::fill(std::uint8_t* out, std::size_t n) {
    while (n > 0) {
        if (pos_ == buf_.size()) {
            refill();
        }
        std::size_t take = std::min(n, buf_.size() - pos_);
        std::memcpy(out, buf_.data() + pos_, take);
        pos_ += take;
        out += take;
        n -= take;
    }
}

Bytes Rng::bytes(std::size_t n) {
    Bytes out(n);
    fill(out.data(), n);
    return out;
}

std::uint64_t Rng::next_u64() {
    std::uint8_t b[8];
    fill(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v = (v << 8) | b[i];
    }
    return v;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) {
        throw Error("uniform_below(0)");
    }
    // rejection sampling over the largest multiple of bound
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

Rng Rng::derive(std::string_view label, std::uint64_t index) const {
    Bytes msg = to_bytes(label);
    msg.push_back(0);
    append_u64_be(msg, index);
    std::array<std::uint8_t, 32> child{};
    crypto_generichash(child.data(), child.size(), msg.data(), msg.size(), key_.data(),
                       key_.size());
    return Rng(child);
}

}  // namespace dccse
