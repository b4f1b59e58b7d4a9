#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dccse/commands.hpp"

namespace {

int emit(const dccse::cli::Report& rep, const std::string& out_file) {
    std::string text = rep.render();
    dccse::cli::validate_report(rep.to_json());
    std::cout << text;
    if (!out_file.empty()) {
        std::ofstream f(out_file, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << out_file << "\n";
            return 2;
        }
        f << text;
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DCC-SE keyword-search workbench: scheme correctness, the KT-IND-CKA "
                 "registered-user attack, the designated-tester fix, and operation counts"};
    app.require_subcommand(1);

    std::string backend_str = "production";
    std::uint64_t seed = 0;
    std::uint32_t trials = 1000;
    std::uint32_t receivers = 3;
    std::uint32_t iterations = 1000;
    std::string out_file;
    bool patched = false;
    bool collude = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--backend", backend_str, "group backend: toy|production")
            ->check(CLI::IsMember({"toy", "production"}));
        cmd->add_option("--seed", seed, "deterministic seed")->envname("DCCSE_SEED");
        cmd->add_option("--out", out_file, "also write the report to this file");
    };

    CLI::App* correctness =
        app.add_subcommand("correctness", "match/mismatch suites and registration-secret checks");
    add_common(correctness);
    correctness->add_option("--iterations", iterations, "instances per property suite");

    CLI::App* attack = app.add_subcommand(
        "attack", "estimate the attack adversary's KT-IND-CKA distinguishing advantage");
    add_common(attack);
    attack->add_option("--trials", trials, "number of independent games");
    attack->add_option("--receivers", receivers, "receiver-set size |I|");
    attack->add_flag("--patched", patched, "wrap challenge trapdoors to a designated server");
    attack->add_flag("--collude-server", collude,
                     "hand the adversary the designated server's secret");

    dccse::cli::SimScript script;
    std::vector<std::string> keywords;
    CLI::App* sim = app.add_subcommand("sim", "multi-role epoch simulation over a message bus");
    add_common(sim);
    sim->add_option("--epochs", script.epochs, "number of epochs");
    sim->add_option("--users", script.users, "number of enrolled users");
    sim->add_option("--receivers", script.receivers_per_doc, "receivers per document");
    sim->add_option("--keywords", keywords, "keyword universe")->delimiter(',');
    sim->add_flag("--adversary", script.adversary_enabled,
                  "tap the public channel and attack intercepted trapdoors");
    sim->add_flag("--patched", script.patched, "route trapdoors to a designated server");
    sim->add_flag("--collude-server", script.collude_server,
                  "the designated server shares its secret with the adversary");
    sim->add_flag("--blind-issuance", script.blind_issuance,
                  "users request partial keys through the blind-signature path");

    CLI::App* bench =
        app.add_subcommand("bench", "operation counts and timings, with the patch-overhead bound");
    add_common(bench);
    bench->add_option("--iterations", iterations, "calls per measured operation");
    bench->add_option("--receivers", receivers, "receiver-set size |I|");

    CLI11_PARSE(app, argc, argv);

    try {
        const dccse::Backend backend = dccse::backend_from_name(backend_str);
        if (correctness->parsed()) {
            return emit(dccse::cli::cmd_correctness(backend, iterations, seed), out_file);
        }
        if (attack->parsed()) {
            return emit(dccse::cli::cmd_attack(trials, seed, receivers, patched, collude, backend),
                        out_file);
        }
        if (sim->parsed()) {
            script.backend = backend;
            script.seed = seed;
            script.keyword_universe.clear();
            for (const auto& k : keywords) {
                script.keyword_universe.push_back(dccse::to_bytes(k));
            }
            if (script.keyword_universe.empty()) {
                script.keyword_universe = dccse::cli::default_keyword_universe();
            }
            return emit(dccse::cli::cmd_sim(script), out_file);
        }
        if (bench->parsed()) {
            return emit(dccse::cli::cmd_bench(backend, iterations, receivers), out_file);
        }
    } catch (const dccse::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
