#include "dccse/core.hpp"

#include <algorithm>
#include <set>

namespace dccse::core {

namespace {

void check_receiver_set(const ReceiverSet& ids, const std::vector<Point>& pubs) {
    if (ids.empty()) {
        throw EmptyReceiverSet();
    }
    std::set<std::uint32_t> seen;
    for (auto id : ids) {
        if (!seen.insert(id).second) {
            throw DuplicateReceiver("duplicate receiver id " + std::to_string(id));
        }
    }
    if (pubs.size() != ids.size()) {
        throw InvalidArgument("receiver set and public key list differ in length");
    }
}

}  // namespace

GlobalParams setup(Backend backend) {
    return setup(backend == Backend::toy ? make_toy_group() : make_ristretto_group());
}

GlobalParams setup(std::shared_ptr<const Group> group) {
    return GlobalParams(std::move(group));
}

EpochToken issue_epoch_token(std::uint64_t epoch_id, Rng& rng) {
    return EpochToken{epoch_id, rng.bytes(kTokenBytes)};
}

const EpochToken& CertificateAuthority::issue_epoch_token(std::uint64_t epoch_id) {
    auto it = issued_.find(epoch_id);
    if (it == issued_.end()) {
        // keyed derivation keeps re-issuance idempotent per epoch
        Rng epoch_rng = rng_.derive("epoch", epoch_id);
        it = issued_.emplace(epoch_id, core::issue_epoch_token(epoch_id, epoch_rng)).first;
    }
    return it->second;
}

CommitteeKey committee_keygen(const GlobalParams& gp, Rng& rng) {
    const Group& g = *gp.group;
    Scalar s = g.random_nonzero_scalar(rng);
    return CommitteeKey{s, g.mul(s, g.generator())};
}

PartialKey partial_key_request(const GlobalParams& gp, const EpochToken& token,
                               const CommitteeKey& committee) {
    const Group& g = *gp.group;
    Point sigma = g.mul(committee.s, gp.suite.h1(token.tau));  // sigma_u = s*H1(tau)
    return PartialKey{sigma, gp.suite.h2(sigma)};
}

Point blind_request(const GlobalParams& gp, const EpochToken& token, const Scalar& blind) {
    const Group& g = *gp.group;
    if (g.scalar_is_zero(blind)) {
        throw InvalidBlind();
    }
    return g.add(gp.suite.h1(token.tau), g.mul(blind, g.generator()));
}

Point blind_sign(const GlobalParams& gp, const Point& blinded, const CommitteeKey& committee) {
    return gp.group->mul(committee.s, blinded);
}

Point unblind(const GlobalParams& gp, const Point& signed_blinded, const Scalar& blind,
              const Point& committee_pub) {
    const Group& g = *gp.group;
    return g.sub(signed_blinded, g.mul(blind, committee_pub));
}

PartialKey partial_key_request_blind(const GlobalParams& gp, const EpochToken& token,
                                     const CommitteeKey& committee, Rng& rng) {
    const Group& g = *gp.group;
    Scalar k = g.random_nonzero_scalar(rng);
    Point blinded = blind_request(gp, token, k);
    Point signed_blinded = blind_sign(gp, blinded, committee);
    Point sigma = unblind(gp, signed_blinded, k, committee.S);
    return PartialKey{sigma, gp.suite.h2(sigma)};
}

SenderKeypair sender_keygen(const GlobalParams& gp, Rng& rng) {
    const Group& g = *gp.group;
    Scalar x = g.random_nonzero_scalar(rng);
    return SenderKeypair{x, g.mul(x, g.generator())};
}

ReceiverKeypair receiver_keygen(const GlobalParams& gp, Rng& rng, std::uint32_t index) {
    const Group& g = *gp.group;
    // y resampled until y is neither 0 nor 1: T2 divides by (y - 1)
    Scalar y;
    do {
        y = g.random_scalar(rng);
    } while (g.scalar_is_zero(y) || y == g.scalar_one());
    return ReceiverKeypair{y, g.mul(y, g.generator()), index};
}

KeywordCiphertext const_enc_keyword_with_rand(const GlobalParams& gp, const Point& sender_pub,
                                              const ReceiverSet& receiver_set,
                                              const std::vector<Point>& receiver_pubs,
                                              const Scalar& eta, BytesView keyword,
                                              const Scalar& r, const Scalar& h) {
    const Group& g = *gp.group;
    check_receiver_set(receiver_set, receiver_pubs);
    if (g.scalar_is_zero(eta)) {
        throw InvalidArgument("eta must be nonzero");
    }
    if (g.scalar_is_zero(r) || g.scalar_is_zero(h)) {
        throw InvalidArgument("r and h must be nonzero");
    }

    Scalar beta = gp.suite.h2(g.mul(eta, sender_pub));  // beta = H2(eta*X)
    Scalar beta_inv = g.scalar_invert(beta);

    KeywordCiphertext c;
    c.c1 = g.scalar_mul(r, beta_inv);  // r / beta
    c.c2 = g.scalar_mul(h, beta_inv);  // h / beta
    c.c3 = g.mul(r, g.generator());

    Point c5 = g.mul(r, receiver_pubs[0]);  // sum_{j in I} r*Y_j
    for (std::size_t j = 1; j < receiver_pubs.size(); ++j) {
        c5 = g.add(c5, g.mul(r, receiver_pubs[j]));
    }
    c.c5 = c5;

    Scalar rhw = g.scalar_mul(g.scalar_mul(r, h), gp.suite.h(keyword));
    c.c6 = gp.suite.h3(g.mul(rhw, g.generator()));  // H3(r*h*H(w)*P)
    c.receiver_set = receiver_set;
    return c;
}

KeywordCiphertext const_enc_keyword(const GlobalParams& gp, const Point& sender_pub,
                                    const ReceiverSet& receiver_set,
                                    const std::vector<Point>& receiver_pubs, const Scalar& eta,
                                    BytesView keyword, Rng& rng) {
    const Group& g = *gp.group;
    Scalar r = g.random_nonzero_scalar(rng);
    Scalar h = g.random_nonzero_scalar(rng);
    return const_enc_keyword_with_rand(gp, sender_pub, receiver_set, receiver_pubs, eta, keyword,
                                       r, h);
}

Trapdoor gen_trapdoor(const GlobalParams& gp, const Point& sender_pub,
                      const ReceiverKeypair& receiver, const ReceiverSet& receiver_set,
                      const std::vector<Point>& receiver_pubs, const Scalar& eta,
                      BytesView keyword) {
    const Group& g = *gp.group;
    check_receiver_set(receiver_set, receiver_pubs);
    if (g.scalar_is_zero(eta)) {
        throw InvalidArgument("eta must be nonzero");
    }
    auto pos = std::find(receiver_set.begin(), receiver_set.end(), receiver.index);
    if (pos == receiver_set.end()) {
        throw ReceiverNotInSet("receiver id " + std::to_string(receiver.index) +
                               " is not in the receiver set");
    }
    if (receiver.y == g.scalar_one() || g.scalar_is_zero(receiver.y)) {
        throw DegenerateReceiverKey();
    }

    Scalar beta = gp.suite.h2(g.mul(eta, sender_pub));  // beta = H2(eta*X)

    Point t1 = g.identity();  // sum over I \ {i}; identity when I = {i}
    for (std::size_t j = 0; j < receiver_set.size(); ++j) {
        if (receiver_set[j] == receiver.index) {
            continue;
        }
        t1 = g.add(t1, g.mul(beta, receiver_pubs[j]));
    }

    // T2 = (y_i - 1)^-1 * beta * H(w)
    Scalar y_minus_1 = g.scalar_sub(receiver.y, g.scalar_one());
    Scalar t2 = g.scalar_mul(g.scalar_mul(g.scalar_invert(y_minus_1), beta), gp.suite.h(keyword));

    return Trapdoor{t1, t2, receiver_set, receiver.index};
}

bool test_match(const GlobalParams& gp, const KeywordCiphertext& c, const Trapdoor& t) {
    if (c.receiver_set != t.receiver_set) {
        throw ReceiverSetMismatch();
    }
    const Group& g = *gp.group;
    // C'6 = H3([(C5 - C1*T1) - C3] * T2*C2)
    Point q = g.sub(g.sub(c.c5, g.mul(c.c1, t.t1)), c.c3);
    Scalar k = g.scalar_mul(t.t2, c.c2);
    return gp.suite.h3(g.mul(k, q)) == c.c6;
}

Bytes serialize(const Group& g, const KeywordCiphertext& c) {
    Bytes out;
    auto field = [&out](const Bytes& b) {
        append_u32_be(out, static_cast<std::uint32_t>(b.size()));
        out.insert(out.end(), b.begin(), b.end());
    };
    field(g.encode_scalar(c.c1));
    field(g.encode_scalar(c.c2));
    field(g.encode_point(c.c3));
    field(g.encode_point(c.c5));
    field(c.c6);
    append_u32_be(out, static_cast<std::uint32_t>(c.receiver_set.size()));
    for (auto id : c.receiver_set) {
        append_u32_be(out, id);
    }
    return out;
}

namespace {

Bytes read_field(const Group&, BytesView in, std::size_t& off) {
    std::uint32_t len = read_u32_be(in, off);
    return read_exact(in, off, len);
}

ReceiverSet read_receiver_set(BytesView in, std::size_t& off) {
    std::uint32_t n = read_u32_be(in, off);
    ReceiverSet ids;
    ids.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        ids.push_back(read_u32_be(in, off));
    }
    return ids;
}

void expect_consumed(BytesView in, std::size_t off) {
    if (off != in.size()) {
        throw DecodeError("trailing bytes after encoded value");
    }
}

}  // namespace

KeywordCiphertext deserialize_ciphertext(const Group& g, BytesView in) {
    std::size_t off = 0;
    KeywordCiphertext c;
    c.c1 = g.decode_scalar(read_field(g, in, off));
    c.c2 = g.decode_scalar(read_field(g, in, off));
    c.c3 = g.decode_point(read_field(g, in, off));
    c.c5 = g.decode_point(read_field(g, in, off));
    c.c6 = read_field(g, in, off);
    if (c.c6.size() != g.digest_size()) {
        throw DecodeError("C6 digest has wrong length");
    }
    c.receiver_set = read_receiver_set(in, off);
    expect_consumed(in, off);
    return c;
}

Bytes serialize(const Group& g, const Trapdoor& t) {
    Bytes out;
    auto field = [&out](const Bytes& b) {
        append_u32_be(out, static_cast<std::uint32_t>(b.size()));
        out.insert(out.end(), b.begin(), b.end());
    };
    field(g.encode_point(t.t1));
    field(g.encode_scalar(t.t2));
    append_u32_be(out, static_cast<std::uint32_t>(t.receiver_set.size()));
    for (auto id : t.receiver_set) {
        append_u32_be(out, id);
    }
    append_u32_be(out, t.target_index);
    return out;
}

Trapdoor deserialize_trapdoor(const Group& g, BytesView in) {
    std::size_t off = 0;
    Trapdoor t;
    t.t1 = g.decode_point(read_field(g, in, off));
    t.t2 = g.decode_scalar(read_field(g, in, off));
    t.receiver_set = read_receiver_set(in, off);
    t.target_index = read_u32_be(in, off);
    expect_consumed(in, off);
    return t;
}

}  // namespace dccse::core
