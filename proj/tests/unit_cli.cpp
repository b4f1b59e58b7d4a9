#include <doctest.h>

#include "dccse/commands.hpp"

using namespace dccse;
using namespace dccse::cli;

TEST_CASE("correctness command passes on both backends") {
    for (auto backend : {Backend::toy, Backend::production}) {
        Report rep = cmd_correctness(backend, 50, 9);
        CHECK(rep.all_pass());
        CHECK(rep.verdict == "CORRECTNESS OK");
        validate_report(rep.to_json());
    }
}

TEST_CASE("zero iterations is a usage error") {
    CHECK_THROWS_AS((void)cmd_correctness(Backend::toy, 0, 1), UsageError);
    CHECK_THROWS_AS((void)cmd_bench(Backend::toy, 0, 3), UsageError);
    CHECK_THROWS_AS((void)cmd_attack(0, 1, 3, false, false, Backend::toy), UsageError);
    CHECK_THROWS_AS((void)cmd_attack(10, 1, 3, false, true, Backend::toy), UsageError);
    CHECK_THROWS_AS((void)backend_from_name("neither"), UsageError);
}

TEST_CASE("sim script validation") {
    SimScript script;
    script.keyword_universe = default_keyword_universe();
    script.users = 2;
    script.receivers_per_doc = 3;
    CHECK_THROWS_AS((void)cmd_sim(script), UsageError);
    script.receivers_per_doc = 1;
    script.keyword_universe.clear();
    CHECK_THROWS_AS((void)cmd_sim(script), UsageError);
    script.keyword_universe = default_keyword_universe();
    script.collude_server = true;
    CHECK_THROWS_AS((void)cmd_sim(script), UsageError);  // collusion needs --patched
}

TEST_CASE("attack report carries the advantage block and verdict") {
    Report rep = cmd_attack(1000, 21, 2, false, false, Backend::production);
    CHECK(rep.all_pass());
    CHECK(rep.verdict == "KT-IND-CKA BROKEN");
    Json j = rep.to_json();
    validate_report(j);
    CHECK(j["advantage"]["successes"] == 1000);
    CHECK(j["advantage"]["advantage"] == 0.5);
    CHECK(j["advantage"]["definition"] == "abs(successes/trials - 1/2)");
}

TEST_CASE("sim end to end: baseline, patched, collusion, blind") {
    SimScript script;
    script.epochs = 2;
    script.users = 4;
    script.receivers_per_doc = 2;
    script.keyword_universe = default_keyword_universe();
    script.adversary_enabled = true;
    script.seed = 6;
    script.backend = Backend::production;

    Report baseline = cmd_sim(script);
    CHECK(baseline.all_pass());
    CHECK(baseline.stats["interceptions"].get<std::uint64_t>() > 0);
    CHECK(baseline.stats["recovered_keywords"] == baseline.stats["interceptions"]);
    validate_report(baseline.to_json());

    script.patched = true;
    Report patched = cmd_sim(script);
    CHECK(patched.all_pass());
    CHECK(patched.stats["cannot_test"] == patched.stats["interceptions"]);

    script.collude_server = true;
    Report collusion = cmd_sim(script);
    CHECK(collusion.all_pass());
    CHECK(collusion.stats["recovered_keywords"] == collusion.stats["interceptions"]);

    script.collude_server = false;
    script.patched = false;
    script.blind_issuance = true;
    Report blind = cmd_sim(script);
    CHECK(blind.all_pass());
    bool found = false;
    for (const auto& c : blind.checks) {
        found = found || c.name == "blind-issuance-agrees";
    }
    CHECK(found);
}

TEST_CASE("the adversary taps only public-channel legs") {
    SimScript script;
    script.epochs = 1;
    script.users = 3;
    script.receivers_per_doc = 1;
    script.keyword_universe = {to_bytes("k1"), to_bytes("k2")};
    script.adversary_enabled = true;
    script.seed = 8;
    script.backend = Backend::toy;

    Report rep = cmd_sim(script);
    const Json kinds = rep.stats["tapped_kinds"];
    for (auto it = kinds.begin(); it != kinds.end(); ++it) {
        CHECK((it.key() == "ciphertext" || it.key() == "trapdoor" ||
               it.key() == "wrapped-trapdoor"));
    }
    CHECK(kinds.contains("trapdoor"));

    script.adversary_enabled = false;
    Report quiet = cmd_sim(script);
    CHECK(quiet.stats["interceptions"] == 0);
    CHECK(quiet.stats["tapped_kinds"].empty());
}

TEST_CASE("fixed seeds give byte-identical reports modulo timings") {
    auto dump = [](const Report& r) { return strip_timings(r.to_json()).dump(); };

    CHECK(dump(cmd_correctness(Backend::toy, 30, 5)) == dump(cmd_correctness(Backend::toy, 30, 5)));
    CHECK(dump(cmd_attack(50, 5, 2, false, false, Backend::production)) ==
          dump(cmd_attack(50, 5, 2, false, false, Backend::production)));
    CHECK(dump(cmd_bench(Backend::toy, 5, 3)) == dump(cmd_bench(Backend::toy, 5, 3)));

    SimScript script;
    script.keyword_universe = default_keyword_universe();
    script.adversary_enabled = true;
    script.seed = 12;
    script.backend = Backend::toy;
    CHECK(dump(cmd_sim(script)) == dump(cmd_sim(script)));

    // a different seed must actually change something
    CHECK(dump(cmd_attack(50, 5, 2, false, false, Backend::production)) !=
          dump(cmd_attack(50, 6, 2, false, false, Backend::production)));
}

TEST_CASE("bench asserts the overhead bound on both backends") {
    for (auto backend : {Backend::toy, Backend::production}) {
        Report rep = cmd_bench(backend, 10, 4);
        CHECK(rep.all_pass());
        CHECK(rep.verdict == "OVERHEAD BOUND HOLDS");
        Json j = rep.to_json();
        validate_report(j);
        CHECK(j["op_counts"]["wrap"]["point_mul"] == 2);
        CHECK(j["op_counts"]["unwrap"]["point_mul"] == 1);
        CHECK(j["op_counts"]["test"]["point_mul"] == 2);
        CHECK(j["op_counts"]["const_enc"]["point_mul"] == 7);  // 3 + |I|
    }
}

TEST_CASE("schema validation rejects malformed reports") {
    Report rep = cmd_correctness(Backend::toy, 10, 1);
    Json good = rep.to_json();
    validate_report(good);

    Json no_schema = good;
    no_schema.erase("schema");
    CHECK_THROWS_AS(validate_report(no_schema), Error);

    Json bad_checks = good;
    bad_checks["checks"] = Json::array({Json{{"name", "x"}}});
    CHECK_THROWS_AS(validate_report(bad_checks), Error);

    Json wrong_cmd = good;
    wrong_cmd["command"] = "unknown";
    CHECK_THROWS_AS(validate_report(wrong_cmd), Error);

    Json attack_no_adv = cmd_attack(10, 1, 2, false, false, Backend::toy).to_json();
    attack_no_adv.erase("advantage");
    CHECK_THROWS_AS(validate_report(attack_no_adv), Error);
}

TEST_CASE("strip_timings removes only the timing subtree") {
    Report rep = cmd_bench(Backend::toy, 3, 2);
    Json full = rep.to_json();
    Json stripped = strip_timings(full);
    CHECK(full.contains("timings"));
    CHECK_FALSE(stripped.contains("timings"));
    CHECK(stripped["op_counts"] == full["op_counts"]);
}
