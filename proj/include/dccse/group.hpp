#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "dccse/bytes.hpp"
#include "dccse/errors.hpp"
#include "dccse/rng.hpp"

namespace dccse {

class Rng;

enum class Backend { toy, production };

const char* backend_name(Backend b);
Backend backend_from_name(std::string_view name);  // throws UsageError

// Scalar in Z_q, held in the backend's canonical in-memory encoding
// (2-byte big-endian for toy, 32-byte little-endian for ristretto255).
// Equality of canonical bytes is equality of field elements.
class Scalar {
public:
    Scalar() = default;
    static Scalar raw(BytesView canonical);
    BytesView bytes() const { return BytesView(b_.data(), n_); }
    std::size_t size() const { return n_; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    std::array<std::uint8_t, 32> b_{};
    std::uint8_t n_ = 0;
};

// Group element, canonical encoding (toy: 2-byte big-endian value in [0,q);
// ristretto255: 32-byte canonical point encoding, identity = all zero).
class Point {
public:
    Point() = default;
    static Point raw(BytesView canonical);
    BytesView bytes() const { return BytesView(b_.data(), n_); }
    std::size_t size() const { return n_; }
    bool operator==(const Point& o) const;
    bool operator!=(const Point& o) const { return !(*this == o); }

private:
    std::array<std::uint8_t, 32> b_{};
    std::uint8_t n_ = 0;
};

using Digest = Bytes;

// Prime-order group <P> of order q with scalar field Z_q, plus the hash
// primitives the scheme's hash suite is built from. Implementations are
// stateless and immutable; every operation is pure.
class Group {
public:
    virtual ~Group() = default;

    virtual Backend backend() const = 0;
    virtual std::string name() const = 0;
    virtual std::string order_decimal() const = 0;
    virtual std::size_t scalar_size() const = 0;
    virtual std::size_t point_size() const = 0;
    virtual std::size_t digest_size() const = 0;

    // scalar field mod q
    virtual Scalar scalar_zero() const = 0;
    virtual Scalar scalar_one() const = 0;
    virtual Scalar scalar_from_u64(std::uint64_t v) const = 0;
    virtual Scalar scalar_add(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_sub(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_mul(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_negate(const Scalar& a) const = 0;
    virtual Scalar scalar_invert(const Scalar& a) const = 0;  // throws DivisionByZero
    virtual bool scalar_is_zero(const Scalar& a) const = 0;
    virtual Scalar random_scalar(Rng& rng) const = 0;  // uniform in [0, q)

    // group <P>
    virtual Point identity() const = 0;
    virtual Point generator() const = 0;
    virtual Point add(const Point& a, const Point& b) const = 0;
    virtual Point sub(const Point& a, const Point& b) const = 0;
    virtual Point negate(const Point& a) const = 0;
    virtual Point mul(const Scalar& k, const Point& p) const = 0;  // k*P

    // wire encodings: scalars big-endian fixed-width, points per the
    // backend's canonical encoding; decode rejects wrong length and
    // non-canonical input with DecodeError
    virtual Bytes encode_scalar(const Scalar& a) const = 0;
    virtual Scalar decode_scalar(BytesView in) const = 0;
    virtual Bytes encode_point(const Point& p) const = 0;
    virtual Point decode_point(BytesView in) const = 0;

    // hash primitives under a domain-separation tag (the toy backend
    // ignores tags; its outputs are defined arithmetically)
    virtual Scalar hash_to_nonzero_scalar(std::string_view tag, BytesView m) const = 0;
    virtual Point hash_to_point(std::string_view tag, BytesView m) const = 0;
    virtual Digest digest(std::string_view tag, BytesView m) const = 0;

    bool is_identity(const Point& p) const { return p == identity(); }
    Scalar random_nonzero_scalar(Rng& rng) const;
};

std::shared_ptr<const Group> make_toy_group();         // q = 101, P = 1
std::shared_ptr<const Group> make_ristretto_group();   // ristretto255

inline constexpr std::string_view kTagH = "DCCSE/H";
inline constexpr std::string_view kTagH1 = "DCCSE/H1";
inline constexpr std::string_view kTagH2 = "DCCSE/H2";
inline constexpr std::string_view kTagH3 = "DCCSE/H3";

enum class HashId { H, H1, H2, H3 };

// The scheme's four hash functions:
//   H  : bytes -> Z*_q      H1 : bytes -> point
//   H2 : point -> Z*_q      H3 : point -> digest
// A toy-backend suite additionally honors an override table mapping
// (hash id, input bytes) to a pinned output, for hand-checkable vectors.
class HashSuite {
public:
    explicit HashSuite(std::shared_ptr<const Group> group);

    Scalar h(BytesView m) const;
    Point h1(BytesView m) const;
    Scalar h2(const Point& p) const;
    Digest h3(const Point& p) const;

    // Per-input pinned outputs; toy backend only (OverrideUnsupported
    // otherwise). Inputs for H2/H3 are the point's encoding.
    void override_h(BytesView input, const Scalar& out);
    void override_h1(BytesView input, const Point& out);
    void override_h2(const Point& input, const Scalar& out);
    void override_h3(const Point& input, BytesView out);

    bool has_overrides() const { return !overrides_.empty(); }
    const Group& group() const { return *group_; }
    std::shared_ptr<const Group> group_ptr() const { return group_; }

private:
    void put_override(HashId id, Bytes input, Bytes output);
    const Bytes* find_override(HashId id, BytesView input) const;

    std::shared_ptr<const Group> group_;
    std::map<std::pair<int, Bytes>, Bytes> overrides_;
};

// Snapshot of the group parameters, for reports and bindings.
struct GroupDescriptor {
    Backend backend;
    std::string name;
    std::string order_decimal;
    std::size_t scalar_size;
    std::size_t point_size;
    std::size_t digest_size;
    std::string generator_hex;
};

GroupDescriptor describe(const Group& g);

}  // namespace dccse
