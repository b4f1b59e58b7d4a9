#pragma once

#include <array>
#include <cstdint>

#include "dccse/bytes.hpp"

namespace dccse {

// Deterministic stream RNG (ChaCha20 keystream under a 32-byte key).
// Child streams are derived by a keyed digest of (key, label, index), so a
// parent handed out to N workers yields N independent, reproducible streams.
// Randomness in this project is always injected through one of these; there
// is no global RNG.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    explicit Rng(const std::array<std::uint8_t, 32>& key);

    void fill(std::uint8_t* out, std::size_t n);
    Bytes bytes(std::size_t n);
    std::uint64_t next_u64();

    // Uniform in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Independent child stream; does not disturb this stream's state.
    Rng derive(std::string_view label, std::uint64_t index) const;

private:
    void refill();

    std::array<std::uint8_t, 32> key_;
    std::array<std::uint8_t, 64> buf_;
    std::uint64_t block_ = 0;
    std::size_t pos_ = 64;
};

}  // namespace dccse
