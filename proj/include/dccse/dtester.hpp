#pragma once

#include "dccse/core.hpp"

// Designated-tester variant: trapdoors travel encrypted to a designated
// server's public key, so only the server can run Test. Wrapping is hybrid
// encryption (DH encapsulation + an authenticated symmetric layer keyed by
// H3 of the shared point), which keeps the extra cost at exactly three
// scalar multiplications per trapdoor lifecycle.
namespace dccse::dtester {

struct ServerKeypair {
    Scalar d;
    Point D;  // d*P; the server is not enrolled: it holds no tau, no eta
};

ServerKeypair server_keygen(const core::GlobalParams& gp, Rng& rng);

struct WrappedTrapdoor {
    Point u;    // ephemeral encapsulation U = u*P
    Bytes ct;   // symmetric ciphertext of the serialized trapdoor
    Bytes tag;  // authentication tag

    bool operator==(const WrappedTrapdoor&) const = default;
};

std::size_t tag_size(Backend backend);

// 2 scalar multiplications: U = u*P and the shared point u*D.
WrappedTrapdoor wrap_trapdoor(const core::GlobalParams& gp, const core::Trapdoor& t,
                              const Point& server_pub, Rng& rng);

// 1 scalar multiplication: shared point d*U. Throws AuthenticationFailure
// on a wrong key or any tampered byte.
core::Trapdoor unwrap_trapdoor(const core::GlobalParams& gp, const WrappedTrapdoor& wt,
                               const Scalar& server_secret);

// Unwrap, then delegate to the unpatched Test; verdicts are identical.
bool designated_test(const core::GlobalParams& gp, const core::KeywordCiphertext& c,
                     const WrappedTrapdoor& wt, const ServerKeypair& server);

// U encoding || 4-byte ct length || ct || tag
Bytes serialize(const Group& g, const WrappedTrapdoor& wt);
WrappedTrapdoor deserialize_wrapped(const Group& g, BytesView in);

}  // namespace dccse::dtester
