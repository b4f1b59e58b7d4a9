#include "dccse/group.hpp"

#include <algorithm>
#include <cstring>

#include "dccse/counting_group.hpp"

namespace dccse {

const char* backend_name(Backend b) {
    return b == Backend::toy ? "toy" : "production";
}

Backend backend_from_name(std::string_view name) {
    if (name == "toy") return Backend::toy;
    if (name == "production") return Backend::production;
    throw UsageError("unknown backend: " + std::string(name));
}

Scalar Scalar::raw(BytesView canonical) {
    if (canonical.size() > 32) {
        throw Error("scalar encoding too long");
    }
    Scalar s;
    std::copy(canonical.begin(), canonical.end(), s.b_.begin());
    s.n_ = static_cast<std::uint8_t>(canonical.size());
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    return n_ == o.n_ && std::equal(b_.begin(), b_.begin() + n_, o.b_.begin());
}

Point Point::raw(BytesView canonical) {
    if (canonical.size() > 32) {
        throw Error("point encoding too long");
    }
    Point p;
    std::copy(canonical.begin(), canonical.end(), p.b_.begin());
    p.n_ = static_cast<std::uint8_t>(canonical.size());
    return p;
}

bool Point::operator==(const Point& o) const {
    return n_ == o.n_ && std::equal(b_.begin(), b_.begin() + n_, o.b_.begin());
}

Scalar Group::random_nonzero_scalar(Rng& rng) const {
    Scalar s;
    do {
        s = random_scalar(rng);
    } while (scalar_is_zero(s));
    return s;
}

HashSuite::HashSuite(std::shared_ptr<const Group> group) : group_(std::move(group)) {}

const Bytes* HashSuite::find_override(HashId id, BytesView input) const {
    if (overrides_.empty()) {
        return nullptr;
    }
    auto it = overrides_.find({static_cast<int>(id), Bytes(input.begin(), input.end())});
    return it == overrides_.end() ? nullptr : &it->second;
}

void HashSuite::put_override(HashId id, Bytes input, Bytes output) {
    if (group_->backend() != Backend::toy) {
        throw OverrideUnsupported();
    }
    overrides_[{static_cast<int>(id), std::move(input)}] = std::move(output);
}

void HashSuite::override_h(BytesView input, const Scalar& out) {
    put_override(HashId::H, Bytes(input.begin(), input.end()), group_->encode_scalar(out));
}

void HashSuite::override_h1(BytesView input, const Point& out) {
    put_override(HashId::H1, Bytes(input.begin(), input.end()), group_->encode_point(out));
}

void HashSuite::override_h2(const Point& input, const Scalar& out) {
    put_override(HashId::H2, group_->encode_point(input), group_->encode_scalar(out));
}

void HashSuite::override_h3(const Point& input, BytesView out) {
    if (out.size() != group_->digest_size()) {
        throw Error("H3 override has wrong digest length");
    }
    put_override(HashId::H3, group_->encode_point(input), Bytes(out.begin(), out.end()));
}

Scalar HashSuite::h(BytesView m) const {
    if (const Bytes* o = find_override(HashId::H, m)) {
        return group_->decode_scalar(*o);
    }
    return group_->hash_to_nonzero_scalar(kTagH, m);
}

Point HashSuite::h1(BytesView m) const {
    if (const Bytes* o = find_override(HashId::H1, m)) {
        return group_->decode_point(*o);
    }
    return group_->hash_to_point(kTagH1, m);
}

Scalar HashSuite::h2(const Point& p) const {
    Bytes enc = group_->encode_point(p);
    if (const Bytes* o = find_override(HashId::H2, enc)) {
        return group_->decode_scalar(*o);
    }
    return group_->hash_to_nonzero_scalar(kTagH2, enc);
}

Digest HashSuite::h3(const Point& p) const {
    Bytes enc = group_->encode_point(p);
    if (const Bytes* o = find_override(HashId::H3, enc)) {
        return *o;
    }
    return group_->digest(kTagH3, enc);
}

GroupDescriptor describe(const Group& g) {
    return GroupDescriptor{
        g.backend(),        g.name(),       g.order_decimal(),
        g.scalar_size(),    g.point_size(), g.digest_size(),
        to_hex(g.encode_point(g.generator())),
    };
}

OpCounts OpCounts::operator-(const OpCounts& o) const {
    OpCounts d;
    d.point_mul = point_mul - o.point_mul;
    d.point_add = point_add - o.point_add;
    d.point_sub = point_sub - o.point_sub;
    d.point_negate = point_negate - o.point_negate;
    d.scalar_mul = scalar_mul - o.scalar_mul;
    d.scalar_add = scalar_add - o.scalar_add;
    d.scalar_sub = scalar_sub - o.scalar_sub;
    d.scalar_invert = scalar_invert - o.scalar_invert;
    d.scalar_negate = scalar_negate - o.scalar_negate;
    d.hash_to_scalar = hash_to_scalar - o.hash_to_scalar;
    d.hash_to_point = hash_to_point - o.hash_to_point;
    d.digest = digest - o.digest;
    return d;
}

}  // namespace dccse
