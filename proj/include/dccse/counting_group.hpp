#pragma once

#include <memory>

#include "dccse/group.hpp"

namespace dccse {

// Tally of group operations, used to check the overhead claims of the
// designated-tester patch by exact operation counts.
struct OpCounts {
    std::uint64_t point_mul = 0;
    std::uint64_t point_add = 0;
    std::uint64_t point_sub = 0;
    std::uint64_t point_negate = 0;
    std::uint64_t scalar_mul = 0;
    std::uint64_t scalar_add = 0;
    std::uint64_t scalar_sub = 0;
    std::uint64_t scalar_invert = 0;
    std::uint64_t scalar_negate = 0;
    std::uint64_t hash_to_scalar = 0;
    std::uint64_t hash_to_point = 0;
    std::uint64_t digest = 0;

    OpCounts operator-(const OpCounts& o) const;
    bool operator==(const OpCounts& o) const = default;
};

// Decorator that forwards every operation to the wrapped group and counts
// it. Counting is not synchronized; use from a single thread.
class CountingGroup final : public Group {
public:
    explicit CountingGroup(std::shared_ptr<const Group> inner) : inner_(std::move(inner)) {}

    const OpCounts& counts() const { return counts_; }
    void reset() { counts_ = OpCounts{}; }

    Backend backend() const override { return inner_->backend(); }
    std::string name() const override { return inner_->name() + "+counting"; }
    std::string order_decimal() const override { return inner_->order_decimal(); }
    std::size_t scalar_size() const override { return inner_->scalar_size(); }
    std::size_t point_size() const override { return inner_->point_size(); }
    std::size_t digest_size() const override { return inner_->digest_size(); }

    Scalar scalar_zero() const override { return inner_->scalar_zero(); }
    Scalar scalar_one() const override { return inner_->scalar_one(); }
    Scalar scalar_from_u64(std::uint64_t v) const override { return inner_->scalar_from_u64(v); }
    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        ++counts_.scalar_add;
        return inner_->scalar_add(a, b);
    }
    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        ++counts_.scalar_sub;
        return inner_->scalar_sub(a, b);
    }
    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        ++counts_.scalar_mul;
        return inner_->scalar_mul(a, b);
    }
    Scalar scalar_negate(const Scalar& a) const override {
        ++counts_.scalar_negate;
        return inner_->scalar_negate(a);
    }
    Scalar scalar_invert(const Scalar& a) const override {
        ++counts_.scalar_invert;
        return inner_->scalar_invert(a);
    }
    bool scalar_is_zero(const Scalar& a) const override { return inner_->scalar_is_zero(a); }
    Scalar random_scalar(Rng& rng) const override { return inner_->random_scalar(rng); }

    Point identity() const override { return inner_->identity(); }
    Point generator() const override { return inner_->generator(); }
    Point add(const Point& a, const Point& b) const override {
        ++counts_.point_add;
        return inner_->add(a, b);
    }
    Point sub(const Point& a, const Point& b) const override {
        ++counts_.point_sub;
        return inner_->sub(a, b);
    }
    Point negate(const Point& a) const override {
        ++counts_.point_negate;
        return inner_->negate(a);
    }
    Point mul(const Scalar& k, const Point& p) const override {
        ++counts_.point_mul;
        return inner_->mul(k, p);
    }

    Bytes encode_scalar(const Scalar& a) const override { return inner_->encode_scalar(a); }
    Scalar decode_scalar(BytesView in) const override { return inner_->decode_scalar(in); }
    Bytes encode_point(const Point& p) const override { return inner_->encode_point(p); }
    Point decode_point(BytesView in) const override { return inner_->decode_point(in); }

    Scalar hash_to_nonzero_scalar(std::string_view tag, BytesView m) const override {
        ++counts_.hash_to_scalar;
        return inner_->hash_to_nonzero_scalar(tag, m);
    }
    Point hash_to_point(std::string_view tag, BytesView m) const override {
        ++counts_.hash_to_point;
        return inner_->hash_to_point(tag, m);
    }
    Digest digest(std::string_view tag, BytesView m) const override {
        ++counts_.digest;
        return inner_->digest(tag, m);
    }

private:
    std::shared_ptr<const Group> inner_;
    mutable OpCounts counts_;
};

}  // namespace dccse
