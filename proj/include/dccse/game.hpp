#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dccse/dtester.hpp"

// Executable KT-IND-CKA game in the revised model: the challenger hands the
// adversary the epoch secrets tau and eta that every registered user holds,
// alongside the public keys. The attack adversary then distinguishes the
// challenge trapdoor with advantage 1/2 using zero oracle queries.
namespace dccse::game {

struct GameConfig {
    std::uint32_t n_receivers = 3;
    std::uint32_t trials = 1000;
    std::uint64_t seed = 0;
    Backend backend = Backend::production;
    bool patched = false;         // wrap the challenge trapdoor to a designated server
    bool collude_server = false;  // hand the adversary the server secret as well
    std::uint32_t oracle_budget = 128;
};

// Everything the challenger hands the adversary at Setup. tau and eta are
// byte-identical to what honest users receive in the same epoch.
struct SetupView {
    const core::GlobalParams* gp = nullptr;
    Point sender_pub;
    core::ReceiverSet receiver_ids;
    std::vector<Point> receiver_pubs;
    core::EpochToken token;
    core::PartialKey partial;
    std::optional<Point> server_pub;      // patched games only
    std::optional<Scalar> server_secret;  // colluding-tester games only
};

struct ChallengeRequest {
    Bytes w0;
    Bytes w1;

    bool operator==(const ChallengeRequest&) const = default;
};

using ChallengeHandout = std::variant<core::Trapdoor, dtester::WrappedTrapdoor>;

enum class Phase { setup, query1, challenge, query2, guess, done };

const char* phase_name(Phase p);

struct OracleCall {
    Phase phase;
    std::string kind;  // "ciphertext" | "trapdoor"
    Bytes keyword;
    std::uint32_t target_index = 0;  // trapdoor queries only

    bool operator==(const OracleCall&) const = default;
};

// Honest ciphertext/trapdoor oracles under the game's keys. Calls are only
// legal during Query 1 / Query 2 and draw from a per-game budget; every
// call is logged into the transcript.
class Oracles {
public:
    core::KeywordCiphertext ciphertext(BytesView keyword);
    core::Trapdoor trapdoor(BytesView keyword, std::uint32_t target_index);

    Phase phase() const { return phase_; }
    const std::vector<OracleCall>& log() const { return log_; }

    // run_game wiring; not part of the adversary-facing surface.
    struct State {
        const core::GlobalParams* gp;
        Point sender_pub;
        core::ReceiverSet receiver_ids;
        std::vector<Point> receiver_pubs;
        std::vector<core::ReceiverKeypair> receiver_keys;
        Scalar eta;
        Rng* rng;
        std::uint32_t budget;
    };
    explicit Oracles(State s) : s_(std::move(s)) {}
    void set_phase(Phase p) { phase_ = p; }

private:
    void check_phase_and_budget();

    State s_;
    Phase phase_ = Phase::setup;
    std::vector<OracleCall> log_;
};

// One full game run.
struct GameTranscript {
    core::EpochToken token;
    core::PartialKey partial;
    Point sender_pub;
    core::ReceiverSet receiver_ids;
    std::vector<Point> receiver_pubs;
    ChallengeRequest challenge;
    int hidden_bit = 0;
    std::uint32_t target_index = 0;
    ChallengeHandout handout;
    int guess_bit = 0;
    bool cannot_test = false;  // adversary strategy was inapplicable (patched game)
    std::vector<OracleCall> oracle_log;
    bool correct = false;

    bool operator==(const GameTranscript&) const = default;
};

struct GuessOutcome {
    int bit = 0;
    bool cannot_test = false;
};

class Adversary {
public:
    virtual ~Adversary() = default;
    virtual std::string id() const = 0;
    virtual ChallengeRequest choose_challenge(const SetupView& view, Oracles& oracles,
                                              Rng& rng) const = 0;
    virtual GuessOutcome guess(const SetupView& view, const ChallengeRequest& challenge,
                               const ChallengeHandout& handout, Oracles& oracles,
                               Rng& rng) const = 0;
};

// The registered-user distinguishing strategy: encrypt w0 under the epoch secrets
// from the setup view, run Test against the challenge trapdoor, output 0 on
// a match and 1 otherwise. Throws CannotTest when the trapdoor is wrapped
// and no server secret is in view.
int attack_adversary_bit(const SetupView& view, const ChallengeHandout& handout, BytesView w0,
                         BytesView w1, Rng& rng);

// Attack strategy wrapped for the harness: on CannotTest it degrades to a
// uniform coin flip, which is the residual strategy against the patch.
class AttackAdversary final : public Adversary {
public:
    std::string id() const override { return "attack"; }
    ChallengeRequest choose_challenge(const SetupView&, Oracles&, Rng& rng) const override;
    GuessOutcome guess(const SetupView& view, const ChallengeRequest& challenge,
                       const ChallengeHandout& handout, Oracles&, Rng& rng) const override;
};

class CoinFlipAdversary final : public Adversary {
public:
    std::string id() const override { return "coinflip"; }
    ChallengeRequest choose_challenge(const SetupView&, Oracles&, Rng& rng) const override;
    GuessOutcome guess(const SetupView&, const ChallengeRequest&, const ChallengeHandout&,
                       Oracles&, Rng& rng) const override;
};

GameTranscript run_game(const GameConfig& config, const Adversary& adversary, Rng& rng);
GameTranscript run_game(const core::GlobalParams& gp, const GameConfig& config,
                        const Adversary& adversary, Rng& rng);

// Advantage = |Pr[b' = b] - 1/2|, the distinguishing advantage up to the
// conventional factor of 2; confidence_halfwidth = 3*sqrt(p(1-p)/trials).
struct AdvantageReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t cannot_test_count = 0;
    double p_hat = 0.0;
    double advantage = 0.0;
    double confidence_halfwidth = 0.0;
    std::uint64_t seed = 0;
    std::string adversary_id;
    std::string variant;  // "baseline" | "designated-tester" (+ "+collusion")
};

// Runs `trials` independent games on per-trial derived streams; trials fan
// out to a small worker pool and the counts fold commutatively.
AdvantageReport estimate_advantage(const GameConfig& config, const Adversary& adversary);

}  // namespace dccse::game
