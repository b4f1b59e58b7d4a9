#pragma once

#include <cstdint>

#include "dccse/group.hpp"
#include "dccse/report.hpp"

namespace dccse::cli {

// Multi-role protocol simulation script: CA, committee, data sender,
// receivers, cloud (or designated server), and optionally an adversary that
// taps the public sender->cloud / receiver->cloud legs.
struct SimScript {
    std::uint32_t epochs = 2;
    std::uint32_t users = 5;
    std::uint32_t receivers_per_doc = 2;
    std::vector<Bytes> keyword_universe;  // nonempty
    bool adversary_enabled = false;
    bool patched = false;
    bool blind_issuance = false;
    bool collude_server = false;
    std::uint64_t seed = 0;
    Backend backend = Backend::production;
};

std::vector<Bytes> default_keyword_universe();

// Match/mismatch correctness suites plus the derivation-chain identity and
// the registration-secret equality checks. iterations must be >= 1.
Report cmd_correctness(Backend backend, std::uint32_t iterations, std::uint64_t seed);

// KT-IND-CKA advantage estimation with the attack-strategy adversary.
// Verdict "KT-IND-CKA BROKEN" requires advantage > 0.45 at 1000+ trials;
// "ATTACK NEUTRALIZED" requires advantage <= 0.03.
Report cmd_attack(std::uint32_t trials, std::uint64_t seed, std::uint32_t receivers, bool patched,
                  bool collude_server, Backend backend);

Report cmd_sim(const SimScript& script);

// Operation counts and wall time for const_enc/trapdoor/test/wrap/unwrap/
// designated_test; asserts the patch's 3-scalar-multiplication overhead.
Report cmd_bench(Backend backend, std::uint32_t iterations, std::uint32_t receivers);

}  // namespace dccse::cli
