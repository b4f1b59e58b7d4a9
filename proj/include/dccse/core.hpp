#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "dccse/group.hpp"
#include "dccse/rng.hpp"

// The DCC-SE keyword-search core: epoch registration secrets, keyword
// encryption, trapdoor generation, and the Test predicate.
namespace dccse::core {

struct GlobalParams {
    std::shared_ptr<const Group> group;
    HashSuite suite;

    explicit GlobalParams(std::shared_ptr<const Group> g) : group(g), suite(std::move(g)) {}
};

GlobalParams setup(Backend backend);
GlobalParams setup(std::shared_ptr<const Group> group);

// Per-epoch secret token tau handed to every enrolled user by the CA.
// All users enrolled in the same epoch hold byte-identical tokens.
struct EpochToken {
    std::uint64_t epoch_id = 0;
    Bytes tau;  // 32 bytes

    bool operator==(const EpochToken&) const = default;
};

constexpr std::size_t kTokenBytes = 32;

// Mints a fresh uniform token for the epoch.
EpochToken issue_epoch_token(std::uint64_t epoch_id, Rng& rng);

// The CA role: one token per epoch, identical for every enrollment request
// in that epoch, fresh across epochs.
class CertificateAuthority {
public:
    explicit CertificateAuthority(Rng rng) : rng_(std::move(rng)) {}
    const EpochToken& issue_epoch_token(std::uint64_t epoch_id);

private:
    Rng rng_;
    std::map<std::uint64_t, EpochToken> issued_;
};

// Committee signing key: S = s*P.
struct CommitteeKey {
    Scalar s;
    Point S;
};

CommitteeKey committee_keygen(const GlobalParams& gp, Rng& rng);

// sigma_u = s*H1(tau), eta = H2(sigma_u); identical for every user holding
// the same epoch token.
struct PartialKey {
    Point sigma_u;
    Scalar eta;

    bool operator==(const PartialKey&) const = default;
};

PartialKey partial_key_request(const GlobalParams& gp, const EpochToken& token,
                               const CommitteeKey& committee);

// Blind issuance of sigma_u: the committee signs a blinded element and the
// user unblinds, receiving the same sigma_u as the direct path while the
// signer never sees H1(tau).
//   blind_request: M' = H1(tau) + k*P        (k nonzero)
//   blind_sign:    s*M'
//   unblind:       s*M' - k*S = s*H1(tau)
Point blind_request(const GlobalParams& gp, const EpochToken& token, const Scalar& blind);
Point blind_sign(const GlobalParams& gp, const Point& blinded, const CommitteeKey& committee);
Point unblind(const GlobalParams& gp, const Point& signed_blinded, const Scalar& blind,
              const Point& committee_pub);

// Full blind flow with a fresh blinding scalar.
PartialKey partial_key_request_blind(const GlobalParams& gp, const EpochToken& token,
                                     const CommitteeKey& committee, Rng& rng);

struct SenderKeypair {
    Scalar x;
    Point X;
};

SenderKeypair sender_keygen(const GlobalParams& gp, Rng& rng);

// Receiver secret y is resampled until y is neither 0 nor 1; the trapdoor
// divides by (y - 1).
struct ReceiverKeypair {
    Scalar y;
    Point Y;
    std::uint32_t index = 0;
};

ReceiverKeypair receiver_keygen(const GlobalParams& gp, Rng& rng, std::uint32_t index);

// Ordered list of stable receiver ids.
using ReceiverSet = std::vector<std::uint32_t>;

struct KeywordCiphertext {
    Scalar c1;  // r / beta
    Scalar c2;  // h / beta
    Point c3;   // r*P
    Point c5;   // sum_{j in I} r*Y_j
    Digest c6;  // H3(r*h*H(w)*P)
    ReceiverSet receiver_set;

    bool operator==(const KeywordCiphertext&) const = default;
};

struct Trapdoor {
    Point t1;   // sum_{j in I, j != i} beta*Y_j
    Scalar t2;  // (y_i - 1)^-1 * beta * H(w)
    ReceiverSet receiver_set;
    std::uint32_t target_index = 0;

    bool operator==(const Trapdoor&) const = default;
};

// Keyword encryption with explicit randomness; r and h must be nonzero.
// receiver_pubs is parallel to receiver_set.
KeywordCiphertext const_enc_keyword_with_rand(const GlobalParams& gp, const Point& sender_pub,
                                              const ReceiverSet& receiver_set,
                                              const std::vector<Point>& receiver_pubs,
                                              const Scalar& eta, BytesView keyword,
                                              const Scalar& r, const Scalar& h);

// Samples r, h uniform in Z*_q.
KeywordCiphertext const_enc_keyword(const GlobalParams& gp, const Point& sender_pub,
                                    const ReceiverSet& receiver_set,
                                    const std::vector<Point>& receiver_pubs, const Scalar& eta,
                                    BytesView keyword, Rng& rng);

// Deterministic: no randomness appears in T1/T2.
Trapdoor gen_trapdoor(const GlobalParams& gp, const Point& sender_pub,
                      const ReceiverKeypair& receiver, const ReceiverSet& receiver_set,
                      const std::vector<Point>& receiver_pubs, const Scalar& eta,
                      BytesView keyword);

// The Test predicate: H3([(C5 - C1*T1) - C3] * T2*C2) == C6.
// Requires equal ordered receiver sets.
bool test_match(const GlobalParams& gp, const KeywordCiphertext& c, const Trapdoor& t);

// Canonical serialization: length-prefixed field encodings in declaration
// order, receiver ids as 4-byte big-endian. Stable across runs.
Bytes serialize(const Group& g, const KeywordCiphertext& c);
KeywordCiphertext deserialize_ciphertext(const Group& g, BytesView in);
Bytes serialize(const Group& g, const Trapdoor& t);
Trapdoor deserialize_trapdoor(const Group& g, BytesView in);

}  // namespace dccse::core
