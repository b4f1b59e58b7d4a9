#include <doctest.h>

#include <cmath>

#include "dccse/game.hpp"

using namespace dccse;
using namespace dccse::game;

namespace {

GameConfig config(Backend backend, bool patched = false, bool collude = false,
                  std::uint32_t n = 3) {
    GameConfig cfg;
    cfg.backend = backend;
    cfg.patched = patched;
    cfg.collude_server = collude;
    cfg.n_receivers = n;
    return cfg;
}

// adversary that issues one honest query pair during Query 1 and checks
// the oracles agree with each other
class ProbingAdversary final : public Adversary {
public:
    std::string id() const override { return "probing"; }
    ChallengeRequest choose_challenge(const SetupView& view, Oracles& oracles,
                                      Rng&) const override {
        Bytes w = to_bytes("queried-keyword");
        auto c = oracles.ciphertext(w);
        auto t = oracles.trapdoor(w, view.receiver_ids.front());
        honest_oracles_agree = core::test_match(*view.gp, c, t);
        return ChallengeRequest{to_bytes("left"), to_bytes("right")};
    }
    GuessOutcome guess(const SetupView&, const ChallengeRequest&, const ChallengeHandout&,
                       Oracles&, Rng& rng) const override {
        return GuessOutcome{static_cast<int>(rng.uniform_below(2)), false};
    }
    mutable bool honest_oracles_agree = false;
};

class FixedChallengeAdversary final : public Adversary {
public:
    explicit FixedChallengeAdversary(Bytes w0, Bytes w1) : w0_(std::move(w0)), w1_(std::move(w1)) {}
    std::string id() const override { return "fixed"; }
    ChallengeRequest choose_challenge(const SetupView&, Oracles&, Rng&) const override {
        return ChallengeRequest{w0_, w1_};
    }
    GuessOutcome guess(const SetupView&, const ChallengeRequest&, const ChallengeHandout&,
                       Oracles&, Rng&) const override {
        return GuessOutcome{0, false};
    }

private:
    Bytes w0_, w1_;
};

class GreedyQueryAdversary final : public Adversary {
public:
    std::string id() const override { return "greedy"; }
    ChallengeRequest choose_challenge(const SetupView&, Oracles& oracles, Rng&) const override {
        for (int i = 0; i < 1000; ++i) {
            (void)oracles.ciphertext(to_bytes("w" + std::to_string(i)));
        }
        return ChallengeRequest{to_bytes("a"), to_bytes("b")};
    }
    GuessOutcome guess(const SetupView&, const ChallengeRequest&, const ChallengeHandout&,
                       Oracles&, Rng&) const override {
        return GuessOutcome{0, false};
    }
};

}  // namespace

TEST_CASE("attack adversary always wins the unpatched game") {
    AttackAdversary adv;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        GameTranscript ts = run_game(config(Backend::production), adv, rng);
        CHECK(ts.correct);
        CHECK(ts.oracle_log.empty());  // the attack needs no queries at all
        CHECK(std::holds_alternative<core::Trapdoor>(ts.handout));
        CHECK_FALSE(ts.cannot_test);
    }
}

TEST_CASE("attack success is independent of receiver-set size and target") {
    AttackAdversary adv;
    for (std::uint32_t n = 1; n <= 10; ++n) {
        GameConfig cfg = config(Backend::production, false, false, n);
        cfg.trials = 20;
        cfg.seed = 1000 + n;
        AdvantageReport rep = estimate_advantage(cfg, adv);
        CHECK(rep.successes == rep.trials);
        CHECK(rep.advantage == doctest::Approx(0.5));
    }
}

TEST_CASE("setup view hands the adversary the registered-user secrets") {
    // the adversary's eta must reproduce its own partial key hash, and the
    // attack must succeed using exactly the view's secrets
    class ViewCheckingAdversary final : public Adversary {
    public:
        std::string id() const override { return "view-check"; }
        ChallengeRequest choose_challenge(const SetupView& view, Oracles&, Rng&) const override {
            view_consistent = view.partial.eta == view.gp->suite.h2(view.partial.sigma_u) &&
                              view.token.tau.size() == core::kTokenBytes &&
                              view.receiver_ids.size() == view.receiver_pubs.size();
            return ChallengeRequest{to_bytes("x"), to_bytes("y")};
        }
        GuessOutcome guess(const SetupView& view, const ChallengeRequest& req,
                           const ChallengeHandout& handout, Oracles&, Rng& rng) const override {
            return GuessOutcome{attack_adversary_bit(view, handout, req.w0, req.w1, rng), false};
        }
        mutable bool view_consistent = false;
    };

    ViewCheckingAdversary adv;
    Rng rng(7);
    GameTranscript ts = run_game(config(Backend::production), adv, rng);
    CHECK(adv.view_consistent);
    CHECK(ts.correct);
}

TEST_CASE("coin-flip adversary hovers at one half") {
    CoinFlipAdversary adv;
    GameConfig cfg = config(Backend::toy);  // the coin never inspects the group
    cfg.trials = 4000;
    cfg.seed = 31337;
    AdvantageReport rep = estimate_advantage(cfg, adv);
    CHECK(rep.advantage <= 0.03);
    CHECK(rep.trials == 4000);
    CHECK(rep.cannot_test_count == 0);
}

TEST_CASE("patched game hands out only wrapped trapdoors") {
    AttackAdversary adv;
    Rng rng(11);
    GameTranscript ts = run_game(config(Backend::production, true), adv, rng);
    CHECK(std::holds_alternative<dtester::WrappedTrapdoor>(ts.handout));
    CHECK(ts.cannot_test);  // strategy degraded to a coin flip
}

TEST_CASE("attack strategy against the patch is a coin flip") {
    AttackAdversary adv;
    GameConfig cfg = config(Backend::production, true);
    cfg.trials = 600;
    cfg.seed = 99;
    AdvantageReport rep = estimate_advantage(cfg, adv);
    CHECK(rep.cannot_test_count == rep.trials);
    CHECK(rep.advantage < 0.1);
    CHECK(rep.variant == "designated-tester");
}

TEST_CASE("colluding designated tester restores the attack") {
    AttackAdversary adv;
    GameConfig cfg = config(Backend::production, true, true);
    cfg.trials = 100;
    cfg.seed = 5;
    AdvantageReport rep = estimate_advantage(cfg, adv);
    CHECK(rep.successes == rep.trials);
    CHECK(rep.cannot_test_count == 0);
    CHECK(rep.variant == "designated-tester+collusion");
}

TEST_CASE("attack strategy on the toy derived vector") {
    // the guess-phase computation with the pinned toy values:
    // matched trapdoor reproduces inner point 29 -> output 0, the w1
    // trapdoor lands on 50 -> output 1
    auto gp = core::setup(Backend::toy);
    const Group& g = *gp.group;
    auto tsc = [&](std::uint64_t v) { return g.scalar_from_u64(v); };
    auto tpt = [&](std::uint8_t v) { return g.decode_point(Bytes{0, v}); };

    Scalar eta = tsc(3);
    Point x_pub = tpt(4);
    Bytes w0 = to_bytes("w0"), w1 = to_bytes("w1");
    gp.suite.override_h2(g.mul(eta, x_pub), tsc(2));
    gp.suite.override_h(w0, tsc(11));
    gp.suite.override_h(w1, tsc(12));
    core::ReceiverKeypair rk{tsc(5), tpt(5), 1};

    SetupView view;
    view.gp = &gp;
    view.sender_pub = x_pub;
    view.receiver_ids = {1};
    view.receiver_pubs = {rk.Y};
    view.token = core::EpochToken{1, to_bytes("tau")};
    view.partial = core::PartialKey{tpt(12), eta};

    Rng rng(29);
    core::Trapdoor t_w0 = core::gen_trapdoor(gp, x_pub, rk, {1}, {rk.Y}, eta, w0);
    CHECK(attack_adversary_bit(view, ChallengeHandout{t_w0}, w0, w1, rng) == 0);
    core::Trapdoor t_w1 = core::gen_trapdoor(gp, x_pub, rk, {1}, {rk.Y}, eta, w1);
    CHECK(attack_adversary_bit(view, ChallengeHandout{t_w1}, w0, w1, rng) == 1);
}

TEST_CASE("attack_adversary_bit refuses a wrapped trapdoor without the server key") {
    AttackAdversary adv;
    Rng rng(13);
    GameTranscript ts = run_game(config(Backend::production, true), adv, rng);

    SetupView view;
    auto gp = core::setup(Backend::production);
    view.gp = &gp;
    view.sender_pub = ts.sender_pub;
    view.receiver_ids = ts.receiver_ids;
    view.receiver_pubs = ts.receiver_pubs;
    view.token = ts.token;
    view.partial = ts.partial;
    Rng arng(14);
    CHECK_THROWS_AS(
        (void)attack_adversary_bit(view, ts.handout, to_bytes("a"), to_bytes("b"), arng),
        CannotTest);
}

TEST_CASE("challenge keywords must differ") {
    FixedChallengeAdversary adv(to_bytes("same"), to_bytes("same"));
    Rng rng(3);
    CHECK_THROWS_AS((void)run_game(config(Backend::toy), adv, rng), InvalidChallenge);
}

TEST_CASE("oracles answer honestly and are logged with their phase") {
    ProbingAdversary adv;
    Rng rng(17);
    GameTranscript ts = run_game(config(Backend::production), adv, rng);
    CHECK(adv.honest_oracles_agree);
    REQUIRE(ts.oracle_log.size() == 2);
    CHECK(ts.oracle_log[0].kind == "ciphertext");
    CHECK(ts.oracle_log[1].kind == "trapdoor");
    for (const auto& call : ts.oracle_log) {
        CHECK((call.phase == Phase::query1 || call.phase == Phase::query2));
    }
}

TEST_CASE("oracle calls outside query phases are phase violations") {
    auto gp = core::setup(Backend::toy);
    Rng rng(19);
    auto sender = core::sender_keygen(gp, rng);
    auto rk = core::receiver_keygen(gp, rng, 1);
    Scalar eta = gp.group->random_nonzero_scalar(rng);
    Oracles oracles(Oracles::State{&gp, sender.X, {1}, {rk.Y}, {rk}, eta, &rng, 16});

    CHECK_THROWS_AS((void)oracles.ciphertext(to_bytes("w")), PhaseViolation);  // setup
    oracles.set_phase(Phase::guess);
    CHECK_THROWS_AS((void)oracles.ciphertext(to_bytes("w")), PhaseViolation);
    oracles.set_phase(Phase::done);
    CHECK_THROWS_AS((void)oracles.trapdoor(to_bytes("w"), 1), PhaseViolation);
    oracles.set_phase(Phase::query2);
    CHECK(core::test_match(gp, oracles.ciphertext(to_bytes("w")),
                           oracles.trapdoor(to_bytes("w"), 1)));
}

TEST_CASE("oracle budget is enforced") {
    GreedyQueryAdversary adv;
    Rng rng(23);
    GameConfig cfg = config(Backend::toy);
    cfg.oracle_budget = 128;
    CHECK_THROWS_AS((void)run_game(cfg, adv, rng), OracleBudgetExceeded);
}

TEST_CASE("identical seeds give identical transcripts") {
    AttackAdversary adv;
    for (bool patched : {false, true}) {
        GameConfig cfg = config(Backend::production, patched);
        Rng a(12345);
        Rng b(12345);
        GameTranscript ta = run_game(cfg, adv, a);
        GameTranscript tb = run_game(cfg, adv, b);
        CHECK(ta == tb);

        Rng c(54321);
        GameTranscript tc = run_game(cfg, adv, c);
        CHECK(ta.challenge.w0 != tc.challenge.w0);
    }
}

TEST_CASE("advantage estimation is deterministic and parallel-stable") {
    AttackAdversary adv;
    GameConfig cfg = config(Backend::production, true);
    cfg.trials = 512;  // crosses the worker-pool threshold
    cfg.seed = 777;
    AdvantageReport a = estimate_advantage(cfg, adv);
    AdvantageReport b = estimate_advantage(cfg, adv);
    CHECK(a.successes == b.successes);
    CHECK(a.cannot_test_count == b.cannot_test_count);
    CHECK(a.p_hat == b.p_hat);
}

TEST_CASE("advantage report arithmetic") {
    CoinFlipAdversary adv;
    GameConfig cfg = config(Backend::toy);
    cfg.trials = 100;
    cfg.seed = 4;
    AdvantageReport rep = estimate_advantage(cfg, adv);
    CHECK(rep.p_hat == doctest::Approx(static_cast<double>(rep.successes) / 100.0));
    CHECK(rep.advantage == doctest::Approx(std::abs(rep.p_hat - 0.5)));
    CHECK(rep.advantage <= 0.5);
    CHECK(rep.confidence_halfwidth ==
          doctest::Approx(3.0 * std::sqrt(rep.p_hat * (1.0 - rep.p_hat) / 100.0)));
}
