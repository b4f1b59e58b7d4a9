#include <doctest.h>

#include "dccse/core.hpp"
#include "oracle_mod101.hpp"

using namespace dccse;
using namespace dccse::core;

namespace {

Scalar tsc(const Group& g, std::uint64_t v) { return g.scalar_from_u64(v); }

Point tpt(const Group& g, std::uint32_t v) {
    std::uint8_t b[2] = {static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    return g.decode_point(BytesView(b, 2));
}

// pinned toy vector: beta = 2, H(w0) = 11, H(w1) = 12,
// y_i = 5, r = 7, h = 3, I = {1}
struct ToyVector {
    GlobalParams gp = setup(Backend::toy);
    Scalar eta;
    Point X;
    ReceiverKeypair receiver;
    ReceiverSet ids{1};
    std::vector<Point> pubs;
    Bytes w0 = to_bytes("w0");
    Bytes w1 = to_bytes("w1");

    ToyVector() {
        const Group& g = *gp.group;
        eta = tsc(g, 3);
        X = tpt(g, 4);  // eta*X = 12, overridden below to beta = 2
        gp.suite.override_h2(g.mul(eta, X), tsc(g, 2));
        gp.suite.override_h(w0, tsc(g, 11));
        gp.suite.override_h(w1, tsc(g, 12));
        receiver = ReceiverKeypair{tsc(g, 5), g.mul(tsc(g, 5), g.generator()), 1};
        pubs = {receiver.Y};
    }

    KeywordCiphertext enc() const {
        return const_enc_keyword_with_rand(gp, X, ids, pubs, eta, w0, tsc(*gp.group, 7),
                                           tsc(*gp.group, 3));
    }
};

struct RandomInstance {
    SenderKeypair sender;
    ReceiverSet ids;
    std::vector<Point> pubs;
    std::vector<ReceiverKeypair> keys;
    Scalar eta;
};

RandomInstance make_instance(const GlobalParams& gp, Rng& rng, std::uint32_t n) {
    RandomInstance inst;
    inst.sender = sender_keygen(gp, rng);
    for (std::uint32_t i = 1; i <= n; ++i) {
        inst.keys.push_back(receiver_keygen(gp, rng, i));
        inst.ids.push_back(i);
        inst.pubs.push_back(inst.keys.back().Y);
    }
    inst.eta = gp.group->random_nonzero_scalar(rng);
    return inst;
}

}  // namespace

TEST_CASE("toy ciphertext vector reproduces the oracle's values") {
    ToyVector v;
    const Group& g = *v.gp.group;

    auto expect = oracle::const_enc(/*beta=*/2, /*hw=*/11, /*r=*/7, /*h=*/3, {5});
    CHECK(expect.c1 == 54);
    CHECK(expect.c2 == 52);
    CHECK(expect.c3 == 7);
    CHECK(expect.c5 == 35);
    CHECK(expect.inner == 29);

    KeywordCiphertext c = v.enc();
    CHECK(c.c1 == tsc(g, static_cast<std::uint64_t>(expect.c1)));
    CHECK(c.c2 == tsc(g, static_cast<std::uint64_t>(expect.c2)));
    CHECK(c.c3 == tpt(g, static_cast<std::uint32_t>(expect.c3)));
    CHECK(c.c5 == tpt(g, static_cast<std::uint32_t>(expect.c5)));
    CHECK(c.c6 == v.gp.suite.h3(tpt(g, static_cast<std::uint32_t>(expect.inner))));
    CHECK(c.c6 == Digest{0x00, 0x1d});
}

TEST_CASE("toy trapdoor vector and Test verdicts") {
    ToyVector v;
    const Group& g = *v.gp.group;

    auto expect = oracle::trapdoor(/*beta=*/2, /*hw=*/11, /*y_i=*/5, {});
    CHECK(expect.t1 == 0);
    CHECK(expect.t2 == 56);

    Trapdoor t = gen_trapdoor(v.gp, v.X, v.receiver, v.ids, v.pubs, v.eta, v.w0);
    CHECK(t.t1 == g.identity());
    CHECK(t.t2 == tsc(g, 56));

    KeywordCiphertext c = v.enc();
    // Q = 35 - 0 - 7 = 28, k = 56*52 = 84, k*Q = 29
    Point q = g.sub(g.sub(c.c5, g.mul(c.c1, t.t1)), c.c3);
    CHECK(q == tpt(g, 28));
    Scalar k = g.scalar_mul(t.t2, c.c2);
    CHECK(k == tsc(g, 84));
    CHECK(g.mul(k, q) == tpt(g, 29));
    CHECK(oracle::test_inner(oracle::const_enc(2, 11, 7, 3, {5}), expect) == 29);
    CHECK(test_match(v.gp, c, t));

    // trapdoor for w1: T2 = (5-1)^-1 * 2 * 12 = 6, inner point 50, no match
    Trapdoor t1 = gen_trapdoor(v.gp, v.X, v.receiver, v.ids, v.pubs, v.eta, v.w1);
    auto expect1 = oracle::trapdoor(2, 12, 5, {});
    CHECK(expect1.t2 == 6);
    CHECK(t1.t2 == tsc(g, 6));
    CHECK(oracle::test_inner(oracle::const_enc(2, 11, 7, 3, {5}), expect1) == 50);
    CHECK(g.mul(g.scalar_mul(t1.t2, c.c2), q) == tpt(g, 50));
    CHECK_FALSE(test_match(v.gp, c, t1));
}

TEST_CASE("multi-receiver sums range over every receiver j") {
    ToyVector v;
    const Group& g = *v.gp.group;
    ReceiverSet ids{1, 2};
    std::vector<Point> pubs{tpt(g, 5), tpt(g, 9)};
    // eta*X is still 12, so the beta = 2 override applies
    KeywordCiphertext c = const_enc_keyword_with_rand(v.gp, v.X, ids, pubs, v.eta, v.w0,
                                                      tsc(g, 7), tsc(g, 3));
    CHECK(oracle::const_enc(2, 11, 7, 3, {5, 9}).c5 == 98);
    CHECK(c.c5 == tpt(g, 98));

    ReceiverKeypair r1{tsc(g, 5), tpt(g, 5), 1};
    Trapdoor t = gen_trapdoor(v.gp, v.X, r1, ids, pubs, v.eta, v.w0);
    CHECK(oracle::trapdoor(2, 11, 5, {9}).t1 == 18);
    CHECK(t.t1 == tpt(g, 18));
    CHECK(test_match(v.gp, c, t));
}

TEST_CASE("partial key issuance: sigma_u = s*H1(tau), eta = H2(sigma_u)") {
    GlobalParams gp = setup(Backend::toy);
    const Group& g = *gp.group;
    EpochToken token{3, to_bytes("epoch-3-token")};
    gp.suite.override_h1(token.tau, tpt(g, 3));
    CommitteeKey committee{tsc(g, 4), g.mul(tsc(g, 4), g.generator())};

    PartialKey pk = partial_key_request(gp, token, committee);
    CHECK(pk.sigma_u == tpt(g, 12));
    CHECK(pk.eta == tsc(g, 13));  // toy default H2(12)
}

TEST_CASE("facts: same epoch yields byte-identical tau and eta") {
    for (auto backend : {Backend::toy, Backend::production}) {
        GlobalParams gp = setup(backend);
        Rng rng(42);
        CertificateAuthority ca(rng.derive("ca", 0));
        CommitteeKey committee = committee_keygen(gp, rng);

        const EpochToken& tok_a = ca.issue_epoch_token(3);
        const EpochToken& tok_b = ca.issue_epoch_token(3);  // second enrollment
        CHECK(tok_a.tau == tok_b.tau);
        CHECK(tok_a.tau.size() == kTokenBytes);

        PartialKey user1 = partial_key_request(gp, tok_a, committee);
        PartialKey user2 = partial_key_request(gp, tok_b, committee);
        CHECK(user1 == user2);

        const EpochToken& tok_next = ca.issue_epoch_token(4);
        CHECK(tok_next.tau != tok_a.tau);
        CHECK(partial_key_request(gp, tok_next, committee).sigma_u != user1.sigma_u);
    }
}

TEST_CASE("blind issuance toy vector: 8 -> 32 -> 12") {
    GlobalParams gp = setup(Backend::toy);
    const Group& g = *gp.group;
    EpochToken token{1, to_bytes("tau")};
    gp.suite.override_h1(token.tau, tpt(g, 3));
    CommitteeKey committee{tsc(g, 4), g.mul(tsc(g, 4), g.generator())};
    Scalar k = tsc(g, 5);

    Point blinded = blind_request(gp, token, k);
    CHECK(blinded == tpt(g, 8));  // 3 + 5*1
    CHECK(blinded != gp.suite.h1(token.tau));
    Point signed_blinded = blind_sign(gp, blinded, committee);
    CHECK(signed_blinded == tpt(g, 32));
    Point sigma = unblind(gp, signed_blinded, k, committee.S);
    CHECK(sigma == tpt(g, 12));
    CHECK(sigma == partial_key_request(gp, token, committee).sigma_u);

    CHECK_THROWS_AS((void)blind_request(gp, token, g.scalar_zero()), InvalidBlind);
}

TEST_CASE("blind and direct issuance agree on random instances") {
    GlobalParams gp = setup(Backend::production);
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        EpochToken token = issue_epoch_token(static_cast<std::uint64_t>(i), rng);
        CommitteeKey committee = committee_keygen(gp, rng);
        PartialKey direct = partial_key_request(gp, token, committee);
        PartialKey blind = partial_key_request_blind(gp, token, committee, rng);
        CHECK(direct == blind);
    }
}

TEST_CASE("completeness on random production instances") {
    GlobalParams gp = setup(Backend::production);
    Rng rng(1001);
    for (int i = 0; i < 300; ++i) {
        auto n = static_cast<std::uint32_t>(1 + rng.uniform_below(10));
        RandomInstance inst = make_instance(gp, rng, n);
        Bytes w = rng.bytes(1 + rng.uniform_below(64));
        auto c = const_enc_keyword(gp, inst.sender.X, inst.ids, inst.pubs, inst.eta, w, rng);
        auto pos = static_cast<std::size_t>(rng.uniform_below(n));
        auto t = gen_trapdoor(gp, inst.sender.X, inst.keys[pos], inst.ids, inst.pubs, inst.eta, w);
        CHECK(test_match(gp, c, t));
    }
}

TEST_CASE("soundness on mismatched keywords") {
    GlobalParams gp = setup(Backend::production);
    Rng rng(1002);
    for (int i = 0; i < 300; ++i) {
        auto n = static_cast<std::uint32_t>(1 + rng.uniform_below(10));
        RandomInstance inst = make_instance(gp, rng, n);
        Bytes w0 = rng.bytes(1 + rng.uniform_below(64));
        Bytes w1;
        do {
            w1 = rng.bytes(1 + rng.uniform_below(64));
        } while (w1 == w0);
        auto c = const_enc_keyword(gp, inst.sender.X, inst.ids, inst.pubs, inst.eta, w0, rng);
        auto pos = static_cast<std::size_t>(rng.uniform_below(n));
        auto t = gen_trapdoor(gp, inst.sender.X, inst.keys[pos], inst.ids, inst.pubs, inst.eta,
                              w1);
        CHECK_FALSE(test_match(gp, c, t));
    }
}

TEST_CASE("derivation-chain identity: C5 - C1*T1 = r*Y_i") {
    GlobalParams gp = setup(Backend::production);
    const Group& g = *gp.group;
    Rng rng(1003);
    for (int i = 0; i < 300; ++i) {
        auto n = static_cast<std::uint32_t>(1 + rng.uniform_below(10));
        RandomInstance inst = make_instance(gp, rng, n);
        Bytes w = rng.bytes(8);
        Scalar r = g.random_nonzero_scalar(rng);
        Scalar h = g.random_nonzero_scalar(rng);
        auto c = const_enc_keyword_with_rand(gp, inst.sender.X, inst.ids, inst.pubs, inst.eta, w,
                                             r, h);
        auto pos = static_cast<std::size_t>(rng.uniform_below(n));
        const auto& rk = inst.keys[pos];
        auto t = gen_trapdoor(gp, inst.sender.X, rk, inst.ids, inst.pubs, inst.eta, w);

        Point lhs = g.sub(c.c5, g.mul(c.c1, t.t1));
        CHECK(lhs == g.mul(r, rk.Y));
        Point q = g.sub(lhs, c.c3);
        CHECK(q == g.mul(g.scalar_mul(r, g.scalar_sub(rk.y, g.scalar_one())), g.generator()));
        CHECK(gp.suite.h3(g.mul(g.scalar_mul(t.t2, c.c2), q)) == c.c6);
    }
}

TEST_CASE("trapdoors are deterministic") {
    GlobalParams gp = setup(Backend::production);
    Rng rng(1004);
    RandomInstance inst = make_instance(gp, rng, 4);
    Bytes w = to_bytes("same keyword");
    Trapdoor a = gen_trapdoor(gp, inst.sender.X, inst.keys[2], inst.ids, inst.pubs, inst.eta, w);
    Trapdoor b = gen_trapdoor(gp, inst.sender.X, inst.keys[2], inst.ids, inst.pubs, inst.eta, w);
    CHECK(a == b);
}

TEST_CASE("keygen invariants") {
    for (auto backend : {Backend::toy, Backend::production}) {
        GlobalParams gp = setup(backend);
        const Group& g = *gp.group;
        Rng rng(1005);
        for (int i = 0; i < (backend == Backend::toy ? 500 : 50); ++i) {
            ReceiverKeypair rk = receiver_keygen(gp, rng, 1);
            CHECK_FALSE(g.scalar_is_zero(rk.y));
            CHECK(rk.y != g.scalar_one());
            CHECK(rk.Y == g.mul(rk.y, g.generator()));
            SenderKeypair sk = sender_keygen(gp, rng);
            CHECK(sk.X == g.mul(sk.x, g.generator()));
        }
        CommitteeKey ck = committee_keygen(gp, rng);
        CHECK(ck.S == g.mul(ck.s, g.generator()));
    }
}

TEST_CASE("input validation errors") {
    GlobalParams gp = setup(Backend::toy);
    const Group& g = *gp.group;
    Rng rng(1006);
    RandomInstance inst = make_instance(gp, rng, 2);
    Bytes w = to_bytes("w");
    Scalar r = tsc(g, 7), h = tsc(g, 3);

    CHECK_THROWS_AS((void)const_enc_keyword_with_rand(gp, inst.sender.X, {}, {}, inst.eta, w, r,
                                                      h),
                    EmptyReceiverSet);
    CHECK_THROWS_AS((void)const_enc_keyword_with_rand(gp, inst.sender.X, {1, 1},
                                                      {inst.pubs[0], inst.pubs[0]}, inst.eta, w,
                                                      r, h),
                    DuplicateReceiver);
    CHECK_THROWS_AS((void)const_enc_keyword_with_rand(gp, inst.sender.X, {1, 2}, {inst.pubs[0]},
                                                      inst.eta, w, r, h),
                    InvalidArgument);
    CHECK_THROWS_AS((void)const_enc_keyword_with_rand(gp, inst.sender.X, inst.ids, inst.pubs,
                                                      g.scalar_zero(), w, r, h),
                    InvalidArgument);
    CHECK_THROWS_AS((void)const_enc_keyword_with_rand(gp, inst.sender.X, inst.ids, inst.pubs,
                                                      inst.eta, w, g.scalar_zero(), h),
                    InvalidArgument);

    ReceiverKeypair outsider{tsc(g, 7), g.mul(tsc(g, 7), g.generator()), 9};
    CHECK_THROWS_AS((void)gen_trapdoor(gp, inst.sender.X, outsider, inst.ids, inst.pubs,
                                       inst.eta, w),
                    ReceiverNotInSet);
    ReceiverKeypair degenerate{g.scalar_one(), g.generator(), 1};
    CHECK_THROWS_AS((void)gen_trapdoor(gp, inst.sender.X, degenerate, inst.ids, inst.pubs,
                                       inst.eta, w),
                    DegenerateReceiverKey);

    auto c = const_enc_keyword(gp, inst.sender.X, inst.ids, inst.pubs, inst.eta, w, rng);
    auto t = gen_trapdoor(gp, inst.sender.X, inst.keys[0], inst.ids, inst.pubs, inst.eta, w);
    t.receiver_set = {1};
    CHECK_THROWS_AS((void)test_match(gp, c, t), ReceiverSetMismatch);
}

TEST_CASE("ciphertext and trapdoor serialization round-trips") {
    for (auto backend : {Backend::toy, Backend::production}) {
        GlobalParams gp = setup(backend);
        const Group& g = *gp.group;
        Rng rng(1007);
        for (int i = 0; i < 50; ++i) {
            auto n = static_cast<std::uint32_t>(1 + rng.uniform_below(6));
            RandomInstance inst = make_instance(gp, rng, n);
            Bytes w = rng.bytes(4);
            auto c = const_enc_keyword(gp, inst.sender.X, inst.ids, inst.pubs, inst.eta, w, rng);
            auto t = gen_trapdoor(gp, inst.sender.X, inst.keys[0], inst.ids, inst.pubs, inst.eta,
                                  w);

            Bytes cb = serialize(g, c);
            CHECK(deserialize_ciphertext(g, cb) == c);
            CHECK(serialize(g, deserialize_ciphertext(g, cb)) == cb);
            Bytes tb = serialize(g, t);
            CHECK(deserialize_trapdoor(g, tb) == t);
            CHECK(serialize(g, deserialize_trapdoor(g, tb)) == tb);
        }

        RandomInstance inst = make_instance(gp, rng, 2);
        Bytes w = to_bytes("w");
        auto t = gen_trapdoor(gp, inst.sender.X, inst.keys[0], inst.ids, inst.pubs, inst.eta, w);
        Bytes tb = serialize(g, t);
        tb.pop_back();
        CHECK_THROWS_AS((void)deserialize_trapdoor(g, tb), DecodeError);
        tb.push_back(0);
        tb.push_back(0);
        CHECK_THROWS_AS((void)deserialize_trapdoor(g, tb), DecodeError);
    }
}

TEST_CASE("epoch tokens are fresh across epochs and sized correctly") {
    Rng rng(1008);
    EpochToken t3 = issue_epoch_token(3, rng);
    EpochToken t4 = issue_epoch_token(4, rng);
    CHECK(t3.tau.size() == kTokenBytes);
    CHECK(t3.tau != t4.tau);
    CHECK(t3.epoch_id == 3);
}
