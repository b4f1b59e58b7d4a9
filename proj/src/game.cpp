#include "dccse/game.hpp"

#include <cmath>
#include <thread>

namespace dccse::game {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::setup: return "setup";
        case Phase::query1: return "query1";
        case Phase::challenge: return "challenge";
        case Phase::query2: return "query2";
        case Phase::guess: return "guess";
        case Phase::done: return "done";
    }
    return "?";
}

void Oracles::check_phase_and_budget() {
    if (phase_ != Phase::query1 && phase_ != Phase::query2) {
        throw PhaseViolation(std::string("oracle call during the ") + phase_name(phase_) +
                             " phase");
    }
    if (log_.size() >= s_.budget) {
        throw OracleBudgetExceeded();
    }
}

core::KeywordCiphertext Oracles::ciphertext(BytesView keyword) {
    check_phase_and_budget();
    log_.push_back(OracleCall{phase_, "ciphertext", Bytes(keyword.begin(), keyword.end()), 0});
    return core::const_enc_keyword(*s_.gp, s_.sender_pub, s_.receiver_ids, s_.receiver_pubs,
                                   s_.eta, keyword, *s_.rng);
}

core::Trapdoor Oracles::trapdoor(BytesView keyword, std::uint32_t target_index) {
    check_phase_and_budget();
    log_.push_back(
        OracleCall{phase_, "trapdoor", Bytes(keyword.begin(), keyword.end()), target_index});
    for (const auto& rk : s_.receiver_keys) {
        if (rk.index == target_index) {
            return core::gen_trapdoor(*s_.gp, s_.sender_pub, rk, s_.receiver_ids,
                                      s_.receiver_pubs, s_.eta, keyword);
        }
    }
    throw ReceiverNotInSet("no receiver with id " + std::to_string(target_index));
}

GameTranscript run_game(const GameConfig& config, const Adversary& adversary, Rng& rng) {
    auto gp = core::setup(config.backend);
    return run_game(gp, config, adversary, rng);
}

GameTranscript run_game(const core::GlobalParams& gp, const GameConfig& config,
                        const Adversary& adversary, Rng& rng) {
    if (config.n_receivers < 1) {
        throw InvalidArgument("n_receivers must be >= 1");
    }

    // Setup: enroll the epoch, then hand the adversary the same view a
    // registered user has, tau and eta included.
    core::EpochToken token = core::issue_epoch_token(1, rng);
    core::CommitteeKey committee = core::committee_keygen(gp, rng);
    core::PartialKey partial = core::partial_key_request(gp, token, committee);
    core::SenderKeypair sender = core::sender_keygen(gp, rng);

    core::ReceiverSet ids;
    std::vector<Point> pubs;
    std::vector<core::ReceiverKeypair> receiver_keys;
    for (std::uint32_t i = 1; i <= config.n_receivers; ++i) {
        receiver_keys.push_back(core::receiver_keygen(gp, rng, i));
        ids.push_back(i);
        pubs.push_back(receiver_keys.back().Y);
    }

    std::optional<dtester::ServerKeypair> server;
    if (config.patched) {
        server = dtester::server_keygen(gp, rng);
    }

    SetupView view;
    view.gp = &gp;
    view.sender_pub = sender.X;
    view.receiver_ids = ids;
    view.receiver_pubs = pubs;
    view.token = token;
    view.partial = partial;
    if (server) {
        view.server_pub = server->D;
        if (config.collude_server) {
            view.server_secret = server->d;
        }
    }

    Oracles oracles(Oracles::State{&gp, sender.X, ids, pubs, receiver_keys, partial.eta, &rng,
                                   config.oracle_budget});
    Rng adv_rng = rng.derive("adversary", 0);

    // Query 1 + Challenge submission
    oracles.set_phase(Phase::query1);
    ChallengeRequest req = adversary.choose_challenge(view, oracles, adv_rng);
    if (req.w0 == req.w1) {
        throw InvalidChallenge();
    }

    // Challenge: hidden bit, uniformly chosen target receiver
    oracles.set_phase(Phase::challenge);
    int b = static_cast<int>(rng.uniform_below(2));
    std::size_t target_pos = static_cast<std::size_t>(rng.uniform_below(ids.size()));
    const Bytes& w_b = (b == 0) ? req.w0 : req.w1;
    core::Trapdoor t_star = core::gen_trapdoor(gp, sender.X, receiver_keys[target_pos], ids,
                                               pubs, partial.eta, w_b);
    ChallengeHandout handout =
        config.patched ? ChallengeHandout(dtester::wrap_trapdoor(gp, t_star, server->D, rng))
                       : ChallengeHandout(t_star);

    // Query 2 + Guess
    oracles.set_phase(Phase::query2);
    GuessOutcome outcome = adversary.guess(view, req, handout, oracles, adv_rng);
    oracles.set_phase(Phase::done);

    GameTranscript ts;
    ts.token = token;
    ts.partial = partial;
    ts.sender_pub = sender.X;
    ts.receiver_ids = ids;
    ts.receiver_pubs = pubs;
    ts.challenge = req;
    ts.hidden_bit = b;
    ts.target_index = ids[target_pos];
    ts.handout = handout;
    ts.guess_bit = outcome.bit;
    ts.cannot_test = outcome.cannot_test;
    ts.oracle_log = oracles.log();
    ts.correct = (outcome.bit == b);
    return ts;
}

int attack_adversary_bit(const SetupView& view, const ChallengeHandout& handout, BytesView w0,
                         BytesView w1, Rng& rng) {
    const core::Trapdoor* t_star = std::get_if<core::Trapdoor>(&handout);
    core::Trapdoor unwrapped;
    if (t_star == nullptr) {
        const auto& wrapped = std::get<dtester::WrappedTrapdoor>(handout);
        if (!view.server_secret) {
            throw CannotTest();
        }
        // colluding designated tester: the server secret opens the wrap
        unwrapped = dtester::unwrap_trapdoor(*view.gp, wrapped, *view.server_secret);
        t_star = &unwrapped;
    }
    // Encrypt w0 under the epoch secrets every registered user holds, then
    // run Test against the challenge trapdoor.
    core::KeywordCiphertext c_w0 =
        core::const_enc_keyword(*view.gp, view.sender_pub, view.receiver_ids, view.receiver_pubs,
                                view.partial.eta, w0, rng);
    (void)w1;
    return core::test_match(*view.gp, c_w0, *t_star) ? 0 : 1;
}

namespace {

Bytes random_keyword(Rng& rng) {
    std::size_t len = 1 + static_cast<std::size_t>(rng.uniform_below(64));
    return rng.bytes(len);
}

ChallengeRequest random_challenge(Rng& rng) {
    ChallengeRequest req;
    req.w0 = random_keyword(rng);
    do {
        req.w1 = random_keyword(rng);
    } while (req.w1 == req.w0);
    return req;
}

}  // namespace

ChallengeRequest AttackAdversary::choose_challenge(const SetupView&, Oracles&, Rng& rng) const {
    return random_challenge(rng);  // zero oracle queries
}

GuessOutcome AttackAdversary::guess(const SetupView& view, const ChallengeRequest& challenge,
                                    const ChallengeHandout& handout, Oracles&, Rng& rng) const {
    try {
        return GuessOutcome{attack_adversary_bit(view, handout, challenge.w0, challenge.w1, rng),
                            false};
    } catch (const CannotTest&) {
        // residual strategy against the patch: uniform coin flip
        return GuessOutcome{static_cast<int>(rng.uniform_below(2)), true};
    }
}

ChallengeRequest CoinFlipAdversary::choose_challenge(const SetupView&, Oracles&,
                                                     Rng& rng) const {
    return random_challenge(rng);
}

GuessOutcome CoinFlipAdversary::guess(const SetupView&, const ChallengeRequest&,
                                      const ChallengeHandout&, Oracles&, Rng& rng) const {
    return GuessOutcome{static_cast<int>(rng.uniform_below(2)), false};
}

AdvantageReport estimate_advantage(const GameConfig& config, const Adversary& adversary) {
    if (config.trials < 1) {
        throw InvalidArgument("trials must be >= 1");
    }
    const Rng root(config.seed);

    struct Tally {
        std::uint64_t successes = 0;
        std::uint64_t cannot_test = 0;
    };

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, Tally& out) {
        auto gp = core::setup(config.backend);
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng trial_rng = root.derive("trial", t);
            GameTranscript ts = run_game(gp, config, adversary, trial_rng);
            out.successes += ts.correct ? 1 : 0;
            out.cannot_test += ts.cannot_test ? 1 : 0;
        }
    };

    Tally total;
    unsigned workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    if (config.trials < 256 || workers == 1) {
        run_range(0, config.trials, total);
    } else {
        std::vector<Tally> parts(workers);
        std::vector<std::thread> threads;
        std::uint64_t chunk = (config.trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t begin = w * chunk;
            std::uint64_t end = std::min<std::uint64_t>(config.trials, begin + chunk);
            if (begin >= end) {
                break;
            }
            threads.emplace_back([&run_range, begin, end, &parts, w] {
                run_range(begin, end, parts[w]);
            });
        }
        for (auto& th : threads) {
            th.join();
        }
        for (const auto& p : parts) {
            total.successes += p.successes;
            total.cannot_test += p.cannot_test;
        }
    }

    AdvantageReport rep;
    rep.trials = config.trials;
    rep.successes = total.successes;
    rep.cannot_test_count = total.cannot_test;
    rep.p_hat = static_cast<double>(total.successes) / static_cast<double>(config.trials);
    rep.advantage = std::abs(rep.p_hat - 0.5);
    rep.confidence_halfwidth =
        3.0 * std::sqrt(rep.p_hat * (1.0 - rep.p_hat) / static_cast<double>(config.trials));
    rep.seed = config.seed;
    rep.adversary_id = adversary.id();
    rep.variant = config.patched
                      ? (config.collude_server ? "designated-tester+collusion" : "designated-tester")
                      : "baseline";
    return rep;
}

}  // namespace dccse::game
