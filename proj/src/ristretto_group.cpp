#include <algorithm>
#include <cstring>

#include "dccse/group.hpp"
#include "sodium_init.hpp"

// Production backend: ristretto255 (a prime-order group of ~126-bit
// security) via libsodium. Points are 32-byte canonical encodings with the
// identity encoding to all zeros; scalars live mod the group order L.
// Hash primitives are domain-separated BLAKE2b: 64 bytes reduced mod L for
// scalars, 64 bytes through the Elligator-based from_hash map for points,
// and a 32-byte digest for H3.

namespace dccse {

namespace {

constexpr std::size_t kBytes = 32;  // scalars and points alike

// L = 2^252 + 27742317777372353535851937790883648493
constexpr const char* kOrderDecimal =
    "7237005577332262213973186563042994240857116359379907606001950938285454250989";

Scalar scalar_of(const std::uint8_t (&le)[kBytes]) {
    return Scalar::raw(BytesView(le, kBytes));
}

void scalar_to(const Scalar& s, std::uint8_t (&out)[kBytes]) {
    if (s.size() != kBytes) {
        throw Error("scalar does not belong to the ristretto255 backend");
    }
    std::memcpy(out, s.bytes().data(), kBytes);
}

void point_to(const Point& p, std::uint8_t (&out)[kBytes]) {
    if (p.size() != kBytes) {
        throw Error("point does not belong to the ristretto255 backend");
    }
    std::memcpy(out, p.bytes().data(), kBytes);
}

Bytes tagged(std::string_view tag, BytesView m) {
    Bytes buf = to_bytes(tag);
    buf.push_back(0);
    buf.insert(buf.end(), m.begin(), m.end());
    return buf;
}

class RistrettoGroup final : public Group {
public:
    RistrettoGroup() { detail::ensure_sodium(); }

    Backend backend() const override { return Backend::production; }
    std::string name() const override { return "ristretto255"; }
    std::string order_decimal() const override { return kOrderDecimal; }
    std::size_t scalar_size() const override { return kBytes; }
    std::size_t point_size() const override { return kBytes; }
    std::size_t digest_size() const override { return kBytes; }

    Scalar scalar_zero() const override {
        std::uint8_t z[kBytes] = {0};
        return scalar_of(z);
    }
    Scalar scalar_one() const override { return scalar_from_u64(1); }
    Scalar scalar_from_u64(std::uint64_t v) const override {
        std::uint8_t le[kBytes] = {0};
        for (int i = 0; i < 8; ++i) {
            le[i] = static_cast<std::uint8_t>(v >> (8 * i));
        }
        return scalar_of(le);
    }
    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        std::uint8_t x[kBytes], y[kBytes], z[kBytes];
        scalar_to(a, x);
        scalar_to(b, y);
        crypto_core_ristretto255_scalar_add(z, x, y);
        return scalar_of(z);
    }
    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        std::uint8_t x[kBytes], y[kBytes], z[kBytes];
        scalar_to(a, x);
        scalar_to(b, y);
        crypto_core_ristretto255_scalar_sub(z, x, y);
        return scalar_of(z);
    }
    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        std::uint8_t x[kBytes], y[kBytes], z[kBytes];
        scalar_to(a, x);
        scalar_to(b, y);
        crypto_core_ristretto255_scalar_mul(z, x, y);
        return scalar_of(z);
    }
    Scalar scalar_negate(const Scalar& a) const override {
        std::uint8_t x[kBytes], z[kBytes];
        scalar_to(a, x);
        crypto_core_ristretto255_scalar_negate(z, x);
        return scalar_of(z);
    }
    Scalar scalar_invert(const Scalar& a) const override {
        std::uint8_t x[kBytes], z[kBytes];
        scalar_to(a, x);
        if (crypto_core_ristretto255_scalar_invert(z, x) != 0) {
            throw DivisionByZero();
        }
        return scalar_of(z);
    }
    bool scalar_is_zero(const Scalar& a) const override {
        std::uint8_t x[kBytes];
        scalar_to(a, x);
        return sodium_is_zero(x, kBytes) == 1;
    }
    Scalar random_scalar(Rng& rng) const override {
        std::uint8_t wide[64];
        rng.fill(wide, sizeof wide);
        std::uint8_t z[kBytes];
        crypto_core_ristretto255_scalar_reduce(z, wide);
        return scalar_of(z);
    }

    Point identity() const override {
        std::uint8_t z[kBytes] = {0};
        return Point::raw(BytesView(z, kBytes));
    }
    Point generator() const override {
        std::uint8_t one[kBytes] = {1};
        std::uint8_t g[kBytes];
        crypto_scalarmult_ristretto255_base(g, one);
        return Point::raw(BytesView(g, kBytes));
    }
    Point add(const Point& a, const Point& b) const override {
        std::uint8_t x[kBytes], y[kBytes], z[kBytes];
        point_to(a, x);
        point_to(b, y);
        if (crypto_core_ristretto255_add(z, x, y) != 0) {
            throw Error("ristretto255 point addition on invalid input");
        }
        return Point::raw(BytesView(z, kBytes));
    }
    Point sub(const Point& a, const Point& b) const override {
        std::uint8_t x[kBytes], y[kBytes], z[kBytes];
        point_to(a, x);
        point_to(b, y);
        if (crypto_core_ristretto255_sub(z, x, y) != 0) {
            throw Error("ristretto255 point subtraction on invalid input");
        }
        return Point::raw(BytesView(z, kBytes));
    }
    Point negate(const Point& a) const override { return sub(identity(), a); }
    Point mul(const Scalar& k, const Point& p) const override {
        // crypto_scalarmult_ristretto255 reports an identity result as an
        // error, so the annihilating cases are answered directly.
        if (scalar_is_zero(k) || is_identity(p)) {
            return identity();
        }
        std::uint8_t n[kBytes], q[kBytes], z[kBytes];
        scalar_to(k, n);
        point_to(p, q);
        if (crypto_scalarmult_ristretto255(z, n, q) != 0) {
            return identity();
        }
        return Point::raw(BytesView(z, kBytes));
    }

    Bytes encode_scalar(const Scalar& a) const override {
        std::uint8_t x[kBytes];
        scalar_to(a, x);
        Bytes out(x, x + kBytes);
        std::reverse(out.begin(), out.end());  // wire format is big-endian
        return out;
    }
    Scalar decode_scalar(BytesView in) const override {
        if (in.size() != kBytes) {
            throw DecodeError("ristretto255 scalar encoding must be exactly 32 bytes");
        }
        std::uint8_t le[kBytes];
        for (std::size_t i = 0; i < kBytes; ++i) {
            le[i] = in[kBytes - 1 - i];
        }
        // canonical iff reducing the value changes nothing
        std::uint8_t wide[64] = {0};
        std::memcpy(wide, le, kBytes);
        std::uint8_t reduced[kBytes];
        crypto_core_ristretto255_scalar_reduce(reduced, wide);
        if (std::memcmp(reduced, le, kBytes) != 0) {
            throw DecodeError("non-canonical ristretto255 scalar");
        }
        return scalar_of(le);
    }
    Bytes encode_point(const Point& p) const override {
        std::uint8_t x[kBytes];
        point_to(p, x);
        return Bytes(x, x + kBytes);
    }
    Point decode_point(BytesView in) const override {
        if (in.size() != kBytes) {
            throw DecodeError("ristretto255 point encoding must be exactly 32 bytes");
        }
        std::uint8_t x[kBytes];
        std::memcpy(x, in.data(), kBytes);
        if (sodium_is_zero(x, kBytes) == 1) {
            return identity();
        }
        if (crypto_core_ristretto255_is_valid_point(x) != 1) {
            throw DecodeError("invalid ristretto255 point encoding");
        }
        // adding the identity re-encodes canonically; libsodium 1.0.18
        // otherwise admits a top-bit alias of every encoding
        std::uint8_t zero[kBytes] = {0};
        std::uint8_t canonical[kBytes];
        if (crypto_core_ristretto255_add(canonical, x, zero) != 0 ||
            std::memcmp(canonical, x, kBytes) != 0) {
            throw DecodeError("non-canonical ristretto255 point encoding");
        }
        return Point::raw(BytesView(x, kBytes));
    }

    Scalar hash_to_nonzero_scalar(std::string_view tag, BytesView m) const override {
        Bytes buf = tagged(tag, m);
        std::uint8_t z[kBytes];
        for (std::uint8_t ctr = 0;; ++ctr) {
            std::uint8_t wide[64];
            crypto_generichash(wide, sizeof wide, buf.data(), buf.size(), nullptr, 0);
            crypto_core_ristretto255_scalar_reduce(z, wide);
            if (sodium_is_zero(z, kBytes) != 1) {
                break;
            }
            buf.push_back(ctr);  // negligible path: re-hash until nonzero
        }
        return scalar_of(z);
    }
    Point hash_to_point(std::string_view tag, BytesView m) const override {
        Bytes buf = tagged(tag, m);
        std::uint8_t wide[64];
        crypto_generichash(wide, sizeof wide, buf.data(), buf.size(), nullptr, 0);
        std::uint8_t p[kBytes];
        crypto_core_ristretto255_from_hash(p, wide);
        return Point::raw(BytesView(p, kBytes));
    }
    Digest digest(std::string_view tag, BytesView m) const override {
        Bytes buf = tagged(tag, m);
        Digest out(kBytes);
        crypto_generichash(out.data(), out.size(), buf.data(), buf.size(), nullptr, 0);
        return out;
    }
};

}  // namespace

std::shared_ptr<const Group> make_ristretto_group() {
    return std::make_shared<const RistrettoGroup>();
}

}  // namespace dccse
