#include "dccse/group.hpp"

// Toy backend: the additive group of integers mod 101 with generator P = 1.
// q = 101 is prime, scalar-times-point is integer multiplication mod 101,
// and every value fits in two big-endian bytes, so each scheme equation is
// checkable by hand. Hash defaults:
//   H(m)  = (int(m) mod (q-1)) + 1        H1(m) = int(m) mod q, 0 -> 1
//   H2(Q) = (val(Q) mod (q-1)) + 1        H3(Q) = 2-byte big-endian of val(Q)

namespace dccse {

namespace {

constexpr std::uint32_t kQ = 101;

std::uint32_t scalar_val(const Scalar& s) {
    if (s.size() != 2) {
        throw Error("scalar does not belong to the toy backend");
    }
    auto b = s.bytes();
    return (static_cast<std::uint32_t>(b[0]) << 8) | b[1];
}

std::uint32_t point_val(const Point& p) {
    if (p.size() != 2) {
        throw Error("point does not belong to the toy backend");
    }
    auto b = p.bytes();
    return (static_cast<std::uint32_t>(b[0]) << 8) | b[1];
}

Scalar scalar_of(std::uint32_t v) {
    std::uint8_t b[2] = {static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    return Scalar::raw(BytesView(b, 2));
}

Point point_of(std::uint32_t v) {
    std::uint8_t b[2] = {static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    return Point::raw(BytesView(b, 2));
}

// big-endian integer of arbitrary-length bytes, reduced mod m (Horner)
std::uint32_t int_be_mod(BytesView bytes, std::uint32_t m) {
    std::uint32_t acc = 0;
    for (std::uint8_t b : bytes) {
        acc = (acc * 256 + b) % m;
    }
    return acc;
}

std::uint32_t pow_mod(std::uint32_t base, std::uint32_t exp, std::uint32_t m) {
    std::uint64_t acc = 1;
    std::uint64_t b = base % m;
    while (exp > 0) {
        if (exp & 1) {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

class ToyGroup final : public Group {
public:
    Backend backend() const override { return Backend::toy; }
    std::string name() const override { return "toy-mod101"; }
    std::string order_decimal() const override { return "101"; }
    std::size_t scalar_size() const override { return 2; }
    std::size_t point_size() const override { return 2; }
    std::size_t digest_size() const override { return 2; }

    Scalar scalar_zero() const override { return scalar_of(0); }
    Scalar scalar_one() const override { return scalar_of(1); }
    Scalar scalar_from_u64(std::uint64_t v) const override {
        return scalar_of(static_cast<std::uint32_t>(v % kQ));
    }
    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        return scalar_of((scalar_val(a) + scalar_val(b)) % kQ);
    }
    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        return scalar_of((scalar_val(a) + kQ - scalar_val(b)) % kQ);
    }
    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        return scalar_of(scalar_val(a) * scalar_val(b) % kQ);
    }
    Scalar scalar_negate(const Scalar& a) const override {
        return scalar_of((kQ - scalar_val(a)) % kQ);
    }
    Scalar scalar_invert(const Scalar& a) const override {
        std::uint32_t v = scalar_val(a);
        if (v == 0) {
            throw DivisionByZero();
        }
        return scalar_of(pow_mod(v, kQ - 2, kQ));  // Fermat
    }
    bool scalar_is_zero(const Scalar& a) const override { return scalar_val(a) == 0; }
    Scalar random_scalar(Rng& rng) const override {
        return scalar_of(static_cast<std::uint32_t>(rng.uniform_below(kQ)));
    }

    Point identity() const override { return point_of(0); }
    Point generator() const override { return point_of(1); }
    Point add(const Point& a, const Point& b) const override {
        return point_of((point_val(a) + point_val(b)) % kQ);
    }
    Point sub(const Point& a, const Point& b) const override {
        return point_of((point_val(a) + kQ - point_val(b)) % kQ);
    }
    Point negate(const Point& a) const override { return point_of((kQ - point_val(a)) % kQ); }
    Point mul(const Scalar& k, const Point& p) const override {
        return point_of(scalar_val(k) * point_val(p) % kQ);
    }

    Bytes encode_scalar(const Scalar& a) const override {
        auto b = a.bytes();
        if (a.size() != 2) {
            throw Error("scalar does not belong to the toy backend");
        }
        return Bytes(b.begin(), b.end());
    }
    Scalar decode_scalar(BytesView in) const override {
        if (in.size() != 2) {
            throw DecodeError("toy scalar encoding must be exactly 2 bytes");
        }
        std::uint32_t v = (static_cast<std::uint32_t>(in[0]) << 8) | in[1];
        if (v >= kQ) {
            throw DecodeError("toy scalar out of range");
        }
        return scalar_of(v);
    }
    Bytes encode_point(const Point& p) const override {
        auto b = p.bytes();
        if (p.size() != 2) {
            throw Error("point does not belong to the toy backend");
        }
        return Bytes(b.begin(), b.end());
    }
    Point decode_point(BytesView in) const override {
        if (in.size() != 2) {
            throw DecodeError("toy point encoding must be exactly 2 bytes");
        }
        std::uint32_t v = (static_cast<std::uint32_t>(in[0]) << 8) | in[1];
        if (v >= kQ) {
            throw DecodeError("toy point out of range");
        }
        return point_of(v);
    }

    Scalar hash_to_nonzero_scalar(std::string_view, BytesView m) const override {
        return scalar_of(int_be_mod(m, kQ - 1) + 1);
    }
    Point hash_to_point(std::string_view, BytesView m) const override {
        std::uint32_t v = int_be_mod(m, kQ);
        return point_of(v == 0 ? 1 : v);
    }
    Digest digest(std::string_view, BytesView m) const override {
        std::uint32_t v = int_be_mod(m, 1u << 16);
        return Digest{static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    }
};

}  // namespace

std::shared_ptr<const Group> make_toy_group() {
    return std::make_shared<const ToyGroup>();
}

}  // namespace dccse
