#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dccse/commands.hpp"
#include "dccse/counting_group.hpp"
#include "dccse/game.hpp"

namespace py = pybind11;
using namespace dccse;

namespace {

Bytes from_py(const py::bytes& b) {
    std::string s = b;
    return Bytes(s.begin(), s.end());
}

py::bytes to_py(BytesView b) {
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

Backend backend_arg(const std::string& name) { return backend_from_name(name); }

}  // namespace

PYBIND11_MODULE(_dccse, m) {
    m.doc() = "DCC-SE keyword-search core, KT-IND-CKA attack harness, and the "
              "designated-tester variant";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<CannotTest>(m, "CannotTest", base);
    py::register_exception<AuthenticationFailure>(m, "AuthenticationFailure", base);
    py::register_exception<DecodeError>(m, "DecodeError", base);
    py::register_exception<UsageError>(m, "UsageError", base);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("bytes", [](Rng& r, std::size_t n) { return to_py(r.bytes(n)); })
        .def("derive", &Rng::derive, py::arg("label"), py::arg("index"));

    py::class_<Scalar>(m, "Scalar")
        .def("__eq__", [](const Scalar& a, const Scalar& b) { return a == b; })
        .def("__repr__",
             [](const Scalar& s) { return "Scalar(0x" + to_hex(s.bytes()) + ")"; });

    py::class_<Point>(m, "Point")
        .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
        .def("__repr__", [](const Point& p) { return "Point(0x" + to_hex(p.bytes()) + ")"; });

    py::class_<core::GlobalParams>(m, "GlobalParams")
        .def_property_readonly("backend",
                               [](const core::GlobalParams& gp) {
                                   return std::string(backend_name(gp.group->backend()));
                               })
        .def("descriptor",
             [](const core::GlobalParams& gp) {
                 GroupDescriptor d = describe(*gp.group);
                 py::dict out;
                 out["backend"] = std::string(backend_name(d.backend));
                 out["name"] = d.name;
                 out["order"] = d.order_decimal;
                 out["scalar_size"] = d.scalar_size;
                 out["point_size"] = d.point_size;
                 out["digest_size"] = d.digest_size;
                 out["generator"] = d.generator_hex;
                 return out;
             })
        .def("scalar_from_int",
             [](const core::GlobalParams& gp, std::uint64_t v) {
                 return gp.group->scalar_from_u64(v);
             })
        .def("random_nonzero_scalar",
             [](const core::GlobalParams& gp, Rng& rng) {
                 return gp.group->random_nonzero_scalar(rng);
             })
        .def("generator", [](const core::GlobalParams& gp) { return gp.group->generator(); })
        .def("identity", [](const core::GlobalParams& gp) { return gp.group->identity(); })
        .def("mul",
             [](const core::GlobalParams& gp, const Scalar& k, const Point& p) {
                 return gp.group->mul(k, p);
             })
        .def("encode_scalar",
             [](const core::GlobalParams& gp, const Scalar& s) {
                 return to_py(gp.group->encode_scalar(s));
             })
        .def("decode_scalar",
             [](const core::GlobalParams& gp, const py::bytes& b) {
                 return gp.group->decode_scalar(from_py(b));
             })
        .def("encode_point",
             [](const core::GlobalParams& gp, const Point& p) {
                 return to_py(gp.group->encode_point(p));
             })
        .def("decode_point",
             [](const core::GlobalParams& gp, const py::bytes& b) {
                 return gp.group->decode_point(from_py(b));
             })
        .def("h",
             [](const core::GlobalParams& gp, const py::bytes& m) {
                 return gp.suite.h(from_py(m));
             })
        .def("h1",
             [](const core::GlobalParams& gp, const py::bytes& m) {
                 return gp.suite.h1(from_py(m));
             })
        .def("h2", [](const core::GlobalParams& gp, const Point& p) { return gp.suite.h2(p); })
        .def("h3",
             [](const core::GlobalParams& gp, const Point& p) { return to_py(gp.suite.h3(p)); })
        .def("override_h",
             [](core::GlobalParams& gp, const py::bytes& input, const Scalar& out) {
                 gp.suite.override_h(from_py(input), out);
             })
        .def("override_h1",
             [](core::GlobalParams& gp, const py::bytes& input, const Point& out) {
                 gp.suite.override_h1(from_py(input), out);
             })
        .def("override_h2",
             [](core::GlobalParams& gp, const Point& input, const Scalar& out) {
                 gp.suite.override_h2(input, out);
             });

    m.def("setup", [](const std::string& backend) { return core::setup(backend_arg(backend)); },
          py::arg("backend") = "production");

    py::class_<core::EpochToken>(m, "EpochToken")
        .def_readonly("epoch_id", &core::EpochToken::epoch_id)
        .def_property_readonly("tau",
                               [](const core::EpochToken& t) { return to_py(t.tau); });

    py::class_<core::CertificateAuthority>(m, "CertificateAuthority")
        .def(py::init([](std::uint64_t seed) { return core::CertificateAuthority(Rng(seed)); }),
             py::arg("seed"))
        .def("issue_epoch_token", &core::CertificateAuthority::issue_epoch_token,
             py::arg("epoch_id"));

    py::class_<core::CommitteeKey>(m, "CommitteeKey")
        .def_readonly("s", &core::CommitteeKey::s)
        .def_readonly("S", &core::CommitteeKey::S);

    py::class_<core::PartialKey>(m, "PartialKey")
        .def_readonly("sigma_u", &core::PartialKey::sigma_u)
        .def_readonly("eta", &core::PartialKey::eta)
        .def("__eq__",
             [](const core::PartialKey& a, const core::PartialKey& b) { return a == b; });

    py::class_<core::SenderKeypair>(m, "SenderKeypair")
        .def_readonly("x", &core::SenderKeypair::x)
        .def_readonly("X", &core::SenderKeypair::X);

    py::class_<core::ReceiverKeypair>(m, "ReceiverKeypair")
        .def_readonly("y", &core::ReceiverKeypair::y)
        .def_readonly("Y", &core::ReceiverKeypair::Y)
        .def_readonly("index", &core::ReceiverKeypair::index);

    py::class_<core::KeywordCiphertext>(m, "KeywordCiphertext")
        .def_readonly("c1", &core::KeywordCiphertext::c1)
        .def_readonly("c2", &core::KeywordCiphertext::c2)
        .def_readonly("c3", &core::KeywordCiphertext::c3)
        .def_readonly("c5", &core::KeywordCiphertext::c5)
        .def_property_readonly("c6",
                               [](const core::KeywordCiphertext& c) { return to_py(c.c6); })
        .def_readonly("receiver_set", &core::KeywordCiphertext::receiver_set)
        .def("__eq__", [](const core::KeywordCiphertext& a, const core::KeywordCiphertext& b) {
            return a == b;
        });

    py::class_<core::Trapdoor>(m, "Trapdoor")
        .def_readonly("t1", &core::Trapdoor::t1)
        .def_readonly("t2", &core::Trapdoor::t2)
        .def_readonly("receiver_set", &core::Trapdoor::receiver_set)
        .def_readonly("target_index", &core::Trapdoor::target_index)
        .def("__eq__",
             [](const core::Trapdoor& a, const core::Trapdoor& b) { return a == b; });

    m.def("issue_epoch_token",
          [](std::uint64_t epoch_id, Rng& rng) { return core::issue_epoch_token(epoch_id, rng); },
          py::arg("epoch_id"), py::arg("rng"));
    m.def("committee_keygen", &core::committee_keygen, py::arg("gp"), py::arg("rng"));
    m.def("partial_key_request", &core::partial_key_request, py::arg("gp"), py::arg("token"),
          py::arg("committee"));
    m.def("blind_request", &core::blind_request, py::arg("gp"), py::arg("token"),
          py::arg("blind"));
    m.def("blind_sign", &core::blind_sign, py::arg("gp"), py::arg("blinded"),
          py::arg("committee"));
    m.def("unblind", &core::unblind, py::arg("gp"), py::arg("signed_blinded"), py::arg("blind"),
          py::arg("committee_pub"));
    m.def("partial_key_request_blind", &core::partial_key_request_blind, py::arg("gp"),
          py::arg("token"), py::arg("committee"), py::arg("rng"));
    m.def("sender_keygen", &core::sender_keygen, py::arg("gp"), py::arg("rng"));
    m.def("receiver_keygen", &core::receiver_keygen, py::arg("gp"), py::arg("rng"),
          py::arg("index"));

    m.def("const_enc_keyword",
          [](const core::GlobalParams& gp, const Point& X, const core::ReceiverSet& ids,
             const std::vector<Point>& pubs, const Scalar& eta, const py::bytes& w, Rng& rng) {
              return core::const_enc_keyword(gp, X, ids, pubs, eta, from_py(w), rng);
          },
          py::arg("gp"), py::arg("sender_pub"), py::arg("receiver_set"),
          py::arg("receiver_pubs"), py::arg("eta"), py::arg("keyword"), py::arg("rng"));
    m.def("const_enc_keyword_with_rand",
          [](const core::GlobalParams& gp, const Point& X, const core::ReceiverSet& ids,
             const std::vector<Point>& pubs, const Scalar& eta, const py::bytes& w,
             const Scalar& r, const Scalar& h) {
              return core::const_enc_keyword_with_rand(gp, X, ids, pubs, eta, from_py(w), r, h);
          },
          py::arg("gp"), py::arg("sender_pub"), py::arg("receiver_set"),
          py::arg("receiver_pubs"), py::arg("eta"), py::arg("keyword"), py::arg("r"),
          py::arg("h"));
    m.def("gen_trapdoor",
          [](const core::GlobalParams& gp, const Point& X, const core::ReceiverKeypair& rk,
             const core::ReceiverSet& ids, const std::vector<Point>& pubs, const Scalar& eta,
             const py::bytes& w) {
              return core::gen_trapdoor(gp, X, rk, ids, pubs, eta, from_py(w));
          },
          py::arg("gp"), py::arg("sender_pub"), py::arg("receiver"), py::arg("receiver_set"),
          py::arg("receiver_pubs"), py::arg("eta"), py::arg("keyword"));
    m.def("test_match", &core::test_match, py::arg("gp"), py::arg("ciphertext"),
          py::arg("trapdoor"));

    m.def("serialize_ciphertext",
          [](const core::GlobalParams& gp, const core::KeywordCiphertext& c) {
              return to_py(core::serialize(*gp.group, c));
          });
    m.def("deserialize_ciphertext",
          [](const core::GlobalParams& gp, const py::bytes& b) {
              return core::deserialize_ciphertext(*gp.group, from_py(b));
          });
    m.def("serialize_trapdoor", [](const core::GlobalParams& gp, const core::Trapdoor& t) {
        return to_py(core::serialize(*gp.group, t));
    });
    m.def("deserialize_trapdoor", [](const core::GlobalParams& gp, const py::bytes& b) {
        return core::deserialize_trapdoor(*gp.group, from_py(b));
    });

    py::class_<dtester::ServerKeypair>(m, "ServerKeypair")
        .def_readonly("d", &dtester::ServerKeypair::d)
        .def_readonly("D", &dtester::ServerKeypair::D);

    py::class_<dtester::WrappedTrapdoor>(m, "WrappedTrapdoor")
        .def_readonly("u", &dtester::WrappedTrapdoor::u)
        .def_property_readonly("ct",
                               [](const dtester::WrappedTrapdoor& w) { return to_py(w.ct); })
        .def_property_readonly("tag",
                               [](const dtester::WrappedTrapdoor& w) { return to_py(w.tag); });

    m.def("server_keygen", &dtester::server_keygen, py::arg("gp"), py::arg("rng"));
    m.def("wrap_trapdoor", &dtester::wrap_trapdoor, py::arg("gp"), py::arg("trapdoor"),
          py::arg("server_pub"), py::arg("rng"));
    m.def("unwrap_trapdoor", &dtester::unwrap_trapdoor, py::arg("gp"), py::arg("wrapped"),
          py::arg("server_secret"));
    m.def("designated_test", &dtester::designated_test, py::arg("gp"), py::arg("ciphertext"),
          py::arg("wrapped"), py::arg("server"));
    m.def("serialize_wrapped",
          [](const core::GlobalParams& gp, const dtester::WrappedTrapdoor& w) {
              return to_py(dtester::serialize(*gp.group, w));
          });
    m.def("deserialize_wrapped", [](const core::GlobalParams& gp, const py::bytes& b) {
        return dtester::deserialize_wrapped(*gp.group, from_py(b));
    });

    py::class_<game::GameConfig>(m, "GameConfig")
        .def(py::init<>())
        .def_readwrite("n_receivers", &game::GameConfig::n_receivers)
        .def_readwrite("trials", &game::GameConfig::trials)
        .def_readwrite("seed", &game::GameConfig::seed)
        .def_readwrite("patched", &game::GameConfig::patched)
        .def_readwrite("collude_server", &game::GameConfig::collude_server)
        .def_readwrite("oracle_budget", &game::GameConfig::oracle_budget)
        .def_property(
            "backend",
            [](const game::GameConfig& c) { return std::string(backend_name(c.backend)); },
            [](game::GameConfig& c, const std::string& b) { c.backend = backend_arg(b); });

    py::class_<game::AdvantageReport>(m, "AdvantageReport")
        .def_readonly("trials", &game::AdvantageReport::trials)
        .def_readonly("successes", &game::AdvantageReport::successes)
        .def_readonly("cannot_test_count", &game::AdvantageReport::cannot_test_count)
        .def_readonly("p_hat", &game::AdvantageReport::p_hat)
        .def_readonly("advantage", &game::AdvantageReport::advantage)
        .def_readonly("confidence_halfwidth", &game::AdvantageReport::confidence_halfwidth)
        .def_readonly("seed", &game::AdvantageReport::seed)
        .def_readonly("adversary_id", &game::AdvantageReport::adversary_id)
        .def_readonly("variant", &game::AdvantageReport::variant);

    m.def("estimate_advantage",
          [](const game::GameConfig& cfg, const std::string& adversary) {
              if (adversary == "attack") {
                  return game::estimate_advantage(cfg, game::AttackAdversary{});
              }
              if (adversary == "coinflip") {
                  return game::estimate_advantage(cfg, game::CoinFlipAdversary{});
              }
              throw UsageError("unknown adversary: " + adversary);
          },
          py::arg("config"), py::arg("adversary") = "attack");

    m.def("run_attack_game",
          [](const game::GameConfig& cfg, std::uint64_t seed) {
              Rng rng(seed);
              game::AttackAdversary adv;
              game::GameTranscript ts = game::run_game(cfg, adv, rng);
              py::dict out;
              out["correct"] = ts.correct;
              out["hidden_bit"] = ts.hidden_bit;
              out["guess_bit"] = ts.guess_bit;
              out["cannot_test"] = ts.cannot_test;
              out["target_index"] = ts.target_index;
              out["oracle_calls"] = ts.oracle_log.size();
              out["wrapped"] = std::holds_alternative<dtester::WrappedTrapdoor>(ts.handout);
              out["w0"] = to_py(ts.challenge.w0);
              out["w1"] = to_py(ts.challenge.w1);
              return out;
          },
          py::arg("config"), py::arg("seed"));

    // command-level entry points returning the report as a JSON string
    m.def("cmd_correctness",
          [](const std::string& backend, std::uint32_t iterations, std::uint64_t seed) {
              return cli::cmd_correctness(backend_arg(backend), iterations, seed).render();
          },
          py::arg("backend") = "production", py::arg("iterations") = 1000, py::arg("seed") = 0);
    m.def("cmd_attack",
          [](std::uint32_t trials, std::uint64_t seed, std::uint32_t receivers, bool patched,
             bool collude_server, const std::string& backend) {
              return cli::cmd_attack(trials, seed, receivers, patched, collude_server,
                                     backend_arg(backend))
                  .render();
          },
          py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("receivers") = 3,
          py::arg("patched") = false, py::arg("collude_server") = false,
          py::arg("backend") = "production");
    m.def("cmd_sim",
          [](std::uint32_t epochs, std::uint32_t users, std::uint32_t receivers_per_doc,
             const std::vector<std::string>& keywords, bool adversary, bool patched,
             bool blind_issuance, bool collude_server, std::uint64_t seed,
             const std::string& backend) {
              cli::SimScript script;
              script.epochs = epochs;
              script.users = users;
              script.receivers_per_doc = receivers_per_doc;
              for (const auto& k : keywords) {
                  script.keyword_universe.push_back(to_bytes(k));
              }
              if (script.keyword_universe.empty()) {
                  script.keyword_universe = cli::default_keyword_universe();
              }
              script.adversary_enabled = adversary;
              script.patched = patched;
              script.blind_issuance = blind_issuance;
              script.collude_server = collude_server;
              script.seed = seed;
              script.backend = backend_arg(backend);
              return cli::cmd_sim(script).render();
          },
          py::arg("epochs") = 2, py::arg("users") = 5, py::arg("receivers_per_doc") = 2,
          py::arg("keywords") = std::vector<std::string>{}, py::arg("adversary") = false,
          py::arg("patched") = false, py::arg("blind_issuance") = false,
          py::arg("collude_server") = false, py::arg("seed") = 0,
          py::arg("backend") = "production");
    m.def("cmd_bench",
          [](const std::string& backend, std::uint32_t iterations, std::uint32_t receivers) {
              return cli::cmd_bench(backend_arg(backend), iterations, receivers).render();
          },
          py::arg("backend") = "production", py::arg("iterations") = 100,
          py::arg("receivers") = 3);
}
