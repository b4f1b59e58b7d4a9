#include "dccse/dtester.hpp"

#include <cstring>

#include "sodium_init.hpp"

namespace dccse::dtester {

namespace {

constexpr std::size_t kToyTagBytes = 8;

// Toy symmetric layer: keyed-digest stream cipher with a truncated
// keyed-digest tag. Deterministic and tamper-detecting, not secure.
struct ToyCipher {
    std::array<std::uint8_t, 32> key{};

    explicit ToyCipher(BytesView key_bytes) {
        detail::ensure_sodium();
        std::copy(key_bytes.begin(), key_bytes.end(), key.begin());
    }

    Bytes keystream_xor(BytesView in) const {
        Bytes out(in.begin(), in.end());
        std::uint8_t block[32];
        for (std::size_t off = 0; off < out.size(); off += sizeof block) {
            Bytes msg = to_bytes("ks");
            append_u64_be(msg, off / sizeof block);
            crypto_generichash(block, sizeof block, msg.data(), msg.size(), key.data(),
                               key.size());
            for (std::size_t i = 0; i < sizeof block && off + i < out.size(); ++i) {
                out[off + i] ^= block[i];
            }
        }
        return out;
    }

    Bytes tag_of(BytesView ct) const {
        Bytes msg = to_bytes("tag");
        msg.insert(msg.end(), ct.begin(), ct.end());
        std::uint8_t full[32];
        crypto_generichash(full, sizeof full, msg.data(), msg.size(), key.data(), key.size());
        return Bytes(full, full + kToyTagBytes);
    }
};

void seal(Backend backend, const Digest& key, BytesView plaintext, Bytes& ct, Bytes& tag) {
    if (backend == Backend::toy) {
        ToyCipher cipher(key);
        ct = cipher.keystream_xor(plaintext);
        tag = cipher.tag_of(ct);
        return;
    }
    detail::ensure_sodium();
    // key is fresh per wrap (ephemeral u), so a fixed nonce is fine
    static const std::uint8_t nonce[crypto_aead_xchacha20poly1305_ietf_NPUBBYTES] = {0};
    ct.resize(plaintext.size());
    tag.resize(crypto_aead_xchacha20poly1305_ietf_ABYTES);
    unsigned long long taglen = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt_detached(ct.data(), tag.data(), &taglen,
                                                        plaintext.data(), plaintext.size(),
                                                        nullptr, 0, nullptr, nonce, key.data());
    tag.resize(taglen);
}

Bytes open(Backend backend, const Digest& key, BytesView ct, BytesView tag) {
    if (backend == Backend::toy) {
        ToyCipher cipher(key);
        if (tag.size() != kToyTagBytes || cipher.tag_of(ct) != Bytes(tag.begin(), tag.end())) {
            throw AuthenticationFailure();
        }
        return cipher.keystream_xor(ct);
    }
    detail::ensure_sodium();
    static const std::uint8_t nonce[crypto_aead_xchacha20poly1305_ietf_NPUBBYTES] = {0};
    if (tag.size() != crypto_aead_xchacha20poly1305_ietf_ABYTES) {
        throw AuthenticationFailure();
    }
    Bytes pt(ct.size());
    if (crypto_aead_xchacha20poly1305_ietf_decrypt_detached(pt.data(), nullptr, ct.data(),
                                                            ct.size(), tag.data(), nullptr, 0,
                                                            nonce, key.data()) != 0) {
        throw AuthenticationFailure();
    }
    return pt;
}

}  // namespace

std::size_t tag_size(Backend backend) {
    return backend == Backend::toy ? kToyTagBytes : crypto_aead_xchacha20poly1305_ietf_ABYTES;
}

ServerKeypair server_keygen(const core::GlobalParams& gp, Rng& rng) {
    const Group& g = *gp.group;
    Scalar d = g.random_nonzero_scalar(rng);
    return ServerKeypair{d, g.mul(d, g.generator())};
}

WrappedTrapdoor wrap_trapdoor(const core::GlobalParams& gp, const core::Trapdoor& t,
                              const Point& server_pub, Rng& rng) {
    const Group& g = *gp.group;
    Scalar u = g.random_nonzero_scalar(rng);
    Point cap = g.mul(u, g.generator());
    Digest key = gp.suite.h3(g.mul(u, server_pub));  // shared point u*D = d*U

    WrappedTrapdoor wt;
    wt.u = cap;
    seal(g.backend(), key, core::serialize(g, t), wt.ct, wt.tag);
    return wt;
}

core::Trapdoor unwrap_trapdoor(const core::GlobalParams& gp, const WrappedTrapdoor& wt,
                               const Scalar& server_secret) {
    const Group& g = *gp.group;
    Digest key = gp.suite.h3(g.mul(server_secret, wt.u));
    Bytes plain = open(g.backend(), key, wt.ct, wt.tag);
    try {
        return core::deserialize_trapdoor(g, plain);
    } catch (const DecodeError&) {
        throw AuthenticationFailure("decrypted trapdoor failed to parse");
    }
}

bool designated_test(const core::GlobalParams& gp, const core::KeywordCiphertext& c,
                     const WrappedTrapdoor& wt, const ServerKeypair& server) {
    return core::test_match(gp, c, unwrap_trapdoor(gp, wt, server.d));
}

Bytes serialize(const Group& g, const WrappedTrapdoor& wt) {
    Bytes out = g.encode_point(wt.u);
    append_u32_be(out, static_cast<std::uint32_t>(wt.ct.size()));
    out.insert(out.end(), wt.ct.begin(), wt.ct.end());
    out.insert(out.end(), wt.tag.begin(), wt.tag.end());
    return out;
}

WrappedTrapdoor deserialize_wrapped(const Group& g, BytesView in) {
    std::size_t off = 0;
    WrappedTrapdoor wt;
    wt.u = g.decode_point(read_exact(in, off, g.point_size()));
    std::uint32_t ct_len = read_u32_be(in, off);
    wt.ct = read_exact(in, off, ct_len);
    wt.tag = read_exact(in, off, tag_size(g.backend()));
    if (off != in.size()) {
        throw DecodeError("trailing bytes after wrapped trapdoor");
    }
    return wt;
}

}  // namespace dccse::dtester
