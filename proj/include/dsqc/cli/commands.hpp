// Copyright 2026 The dsqcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsqc/adversary/detection.hpp"
#include "dsqc/analysis/efficiency.hpp"
#include "dsqc/analysis/leakage.hpp"
#include "dsqc/error.hpp"
#include "dsqc/protocol/session.hpp"
#include "dsqc/states/catalog.hpp"

namespace dsqc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAbort = 3;
inline constexpr int kExitFailure = 4;

inline constexpr int kSchemaVersion = 1;

/// Parsed command line for every subcommand.
struct RunSpec {
    std::string subcommand;
    std::string state = "ghz-like";
    std::optional<std::string> spec_file;
    std::string message;
    std::optional<std::size_t> copies;
    std::optional<std::size_t> decoy_pairs;
    double threshold = 0.0;
    std::string attack = "none";
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    std::size_t key_bits = 16;
    std::optional<std::string> out;
    std::string format = "json";
};

namespace detail {

inline qcore::OrthonormalBasis basis_by_name(const std::string& name, std::size_t k) {
    if (name == "computational") {
        return qcore::computational_basis(k);
    }
    if (name == "hadamard") {
        return qcore::hadamard_basis(k);
    }
    if (name == "cat") {
        return qcore::cat_basis(k);
    }
    if (name == "bell") {
        if (k != 2) {
            throw spec_error("bell basis is two-qubit; got k=" + std::to_string(k));
        }
        return qcore::bell_basis();
    }
    throw lookup_error("unknown basis '" + name + "'");
}

inline std::size_t element_index(const nlohmann::json& entry,
                                 const qcore::OrthonormalBasis& basis) {
    if (entry.is_number_unsigned() || entry.is_number_integer()) {
        return entry.get<std::size_t>();
    }
    return basis.index_of(entry.get<std::string>());
}

inline states::NamedState load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw lookup_error("cannot open spec file '" + path + "'");
    }
    nlohmann::json doc = nlohmann::json::parse(in);
    states::GenericFormSpec spec;
    spec.m = doc.at("m").get<std::size_t>();
    spec.l = doc.at("l").get<std::size_t>();
    spec.n = doc.at("n").get<std::size_t>();
    auto e_basis = basis_by_name(doc.value("e_basis", std::string("cat")), spec.m);
    auto f_basis = basis_by_name(doc.value("f_basis", std::string("computational")), spec.l);
    for (const auto& entry : doc.at("e_selection")) {
        spec.e_selection.push_back(element_index(entry, e_basis));
    }
    for (const auto& entry : doc.at("f_selection")) {
        states::FTerm term;
        if (entry.is_object()) {
            term.index = element_index(entry.at("element"), f_basis);
            term.sign = entry.value("sign", 1);
        } else {
            term.index = element_index(entry, f_basis);
        }
        spec.f_selection.push_back(term);
    }
    return states::make_state("custom:" + path, std::move(spec), std::move(e_basis),
                              std::move(f_basis));
}

inline states::NamedState load_state(const RunSpec& rs) {
    return rs.spec_file ? load_spec_file(*rs.spec_file) : states::named_state(rs.state);
}

/// Accepts a plain binary string or 0x-prefixed hex (4 bits per digit).
inline std::string parse_message(const std::string& raw) {
    if (raw.rfind("0x", 0) == 0 || raw.rfind("0X", 0) == 0) {
        std::string bits;
        for (std::size_t i = 2; i < raw.size(); ++i) {
            const char c = raw[i];
            int v = 0;
            if (c >= '0' && c <= '9') {
                v = c - '0';
            } else if (c >= 'a' && c <= 'f') {
                v = c - 'a' + 10;
            } else if (c >= 'A' && c <= 'F') {
                v = c - 'A' + 10;
            } else {
                throw contract_error("bad hex digit in message");
            }
            for (int b = 3; b >= 0; --b) {
                bits.push_back(((v >> b) & 1) ? '1' : '0');
            }
        }
        return bits;
    }
    for (char c : raw) {
        if (c != '0' && c != '1') {
            throw contract_error("message must be binary or 0x-prefixed hex");
        }
    }
    return raw;
}

inline protocol::ProtocolConfig make_config(const RunSpec& rs,
                                            states::NamedState st,
                                            std::size_t copies) {
    protocol::ProtocolConfig cfg{std::move(st)};
    cfg.copies = copies;
    cfg.decoy_pairs = rs.decoy_pairs;
    cfg.error_threshold = rs.threshold;
    cfg.seed = rs.seed;
    return cfg;
}

inline nlohmann::json config_echo(const RunSpec& rs, const protocol::ProtocolConfig& cfg) {
    return nlohmann::json{{"state", cfg.state.name},
                          {"m", cfg.state.spec.m},
                          {"l", cfg.state.spec.l},
                          {"n", cfg.state.spec.n},
                          {"copies", cfg.copies},
                          {"decoy_pairs", cfg.decoy_pair_count()},
                          {"threshold", cfg.error_threshold},
                          {"attack", rs.attack},
                          {"seed", rs.seed}};
}

inline void emit(const RunSpec& rs, const std::string& text, std::ostream& fallback) {
    if (rs.out) {
        std::ofstream out(*rs.out, std::ios::binary);
        if (!out) {
            throw contract_error("cannot open output file '" + *rs.out + "'");
        }
        out << text;
    } else {
        fallback << text;
    }
}

inline std::string render(const RunSpec& rs, const nlohmann::json& doc,
                          const std::string& log_text) {
    return rs.format == "log" ? log_text : doc.dump(2) + "\n";
}

}  // namespace detail

inline int cmd_run(const RunSpec& rs, std::ostream& out_stream) {
    const auto st = detail::load_state(rs);
    const std::string bits = detail::parse_message(rs.message);
    const std::size_t n = st.spec.n;
    const std::size_t copies = rs.copies ? *rs.copies : (bits.size() + n - 1) / n;
    if (bits.size() > copies * n) {
        throw contract_error("message needs more copies: " + std::to_string(bits.size()) +
                             " bits > copies*n");
    }
    const auto attack = adversary::AttackStrategy::parse(rs.attack);
    const auto cfg = detail::make_config(rs, st, copies);

    qcore::RandomStream rng(rs.seed);
    const auto transcript = protocol::run_protocol(cfg, bits, attack, rng);

    std::string padded = bits;
    padded.resize(((bits.size() + n - 1) / n) * n, '0');
    const std::string decoded = transcript.decoded_message();
    const bool match = !transcript.aborted() && decoded == padded;

    nlohmann::json doc = protocol::to_json(transcript);
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "run";
    doc["config"] = detail::config_echo(rs, cfg);
    doc["summary"] = {{"sent", bits},
                      {"decoded", decoded},
                      {"match", match},
                      {"aborted", transcript.aborted()},
                      {"error_rate", transcript.error_rate()}};

    std::ostringstream log;
    log << protocol::to_log(transcript) << "SUMMARY sent=" << bits << " decoded=" << decoded
        << " match=" << (match ? "yes" : "no") << "\n";
    detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);

    if (transcript.aborted()) {
        return kExitAbort;
    }
    return match ? kExitOk : kExitFailure;
}

inline int cmd_attack_sweep(const RunSpec& rs, std::ostream& out_stream) {
    if (rs.trials < 1) {
        throw contract_error("attack-sweep requires trials >= 1");
    }
    const auto st = detail::load_state(rs);
    const std::size_t copies = rs.copies.value_or(1);

    struct Entry {
        std::string label;
        protocol::ProtocolConfig cfg;
        adversary::AttackStrategy strategy;
    };
    std::vector<Entry> entries;
    for (const char* name : {"none", "measure-resend-computational", "measure-resend-bell",
                             "cnot-clone", "capture-replace"}) {
        entries.push_back(
            {name, detail::make_config(rs, st, copies), adversary::AttackStrategy::parse(name)});
    }
    entries.push_back({"measure-resend-bell-crossed", adversary::crossed_decoy_fixture(st),
                       adversary::AttackStrategy::parse("measure-resend-bell")});

    nlohmann::json results = nlohmann::json::array();
    std::ostringstream log;
    for (const auto& entry : entries) {
        const double exact = adversary::detection_probability_exact(entry.cfg, entry.strategy);
        const auto mc =
            adversary::detection_probability_mc(entry.cfg, entry.strategy, rs.trials, rs.seed);
        results.push_back({{"strategy", entry.label},
                           {"exact", exact},
                           {"mc_estimate", mc.estimate},
                           {"mc_std_error", mc.std_error},
                           {"trials", mc.trials},
                           {"pairs_checked", mc.pairs_checked}});
        log << "ATTACK " << entry.label << " exact=" << exact << " mc=" << mc.estimate
            << " se=" << mc.std_error << "\n";
    }

    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"command", "attack-sweep"},
                       {"config", detail::config_echo(rs, entries.front().cfg)},
                       {"results", std::move(results)}};
    detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);
    return kExitOk;
}

inline int cmd_table(const RunSpec& rs, std::ostream& out_stream) {
    const auto st = detail::load_state(rs);
    const auto table = protocol::build_decode_table(st.spec, st.e_basis, st.f_basis);

    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream log;
    for (const auto& [key, value] : table.rows) {
        rows.push_back({{"first", key.first},
                        {"second", key.second},
                        {"bob", key.bob},
                        {"message", value}});
        log << "ROW first=" << key.first << " second=" << key.second << " bob=" << key.bob
            << " message=" << qcore::bitstring(value, st.spec.n) << "\n";
    }
    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"command", "table"},
                       {"state", st.name},
                       {"first_basis", table.first_basis_name},
                       {"second_basis", table.second_basis_name},
                       {"bob_basis", table.bob_basis_name},
                       {"rows", std::move(rows)}};
    detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);
    return kExitOk;
}

inline int cmd_verify(const RunSpec& rs, std::ostream& out_stream) {
    const auto st = detail::load_state(rs);
    const auto report =
        states::verify_generic_form(st.vector, st.spec.m, st.spec.l, st.spec.n);

    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"command", "verify"},
                       {"state", st.name},
                       {"accepted", report.accepted},
                       {"reason", report.reason},
                       {"schmidt_coefficients", report.schmidt_coefficients},
                       {"recovered_e", report.recovered_e_labels}};
    std::ostringstream log;
    log << "VERIFY state=" << st.name << " accepted=" << (report.accepted ? "yes" : "no");
    if (!report.accepted) {
        log << " reason=\"" << report.reason << "\"";
    }
    log << "\n";
    detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);
    return report.accepted ? kExitOk : kExitFailure;
}

inline int cmd_efficiency(const RunSpec& rs, std::ostream& out_stream) {
    const auto st = detail::load_state(rs);
    nlohmann::json reports = nlohmann::json::array();
    std::ostringstream log;
    for (auto conv :
         {analysis::QubitCounting::total_qubits, analysis::QubitCounting::transmitted_qubits}) {
        const auto rep = analysis::efficiency(st.spec.m, st.spec.l, st.spec.n, conv);
        reports.push_back({{"convention", analysis::to_string(conv)},
                           {"message_bits", rep.message_bits},
                           {"qubits", rep.qubits_counted},
                           {"classical_bits", rep.classical_bits},
                           {"eta", rep.eta}});
        log << "EFFICIENCY convention=" << analysis::to_string(conv) << " eta=" << rep.eta
            << "\n";
    }
    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"command", "efficiency"},
                       {"state", st.name},
                       {"m", st.spec.m},
                       {"l", st.spec.l},
                       {"n", st.spec.n},
                       {"reports", std::move(reports)}};
    detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);
    return kExitOk;
}

inline int cmd_qkd(const RunSpec& rs, std::ostream& out_stream) {
    const auto st = detail::load_state(rs);
    const std::size_t n = st.spec.n;

    qcore::RandomStream rng(rs.seed);
    qcore::RandomStream key_rng = rng.split(1);
    std::string bits;
    for (std::size_t i = 0; i < rs.key_bits; ++i) {
        bits.push_back(key_rng.next_below(2) ? '1' : '0');
    }

    const std::size_t copies = rs.copies ? *rs.copies : (bits.size() + n - 1) / n;
    if (bits.size() > copies * n) {
        throw contract_error("key length needs more copies");
    }
    const auto attack = adversary::AttackStrategy::parse(rs.attack);
    const auto cfg = detail::make_config(rs, st, copies);

    qcore::RandomStream session_rng = rng.split(2);
    const auto transcript = protocol::run_protocol(cfg, bits, attack, session_rng);

    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"command", "qkd"},
                       {"config", detail::config_echo(rs, cfg)},
                       {"aborted", transcript.aborted()},
                       {"error_rate", transcript.error_rate()}};
    std::ostringstream log;
    if (transcript.aborted()) {
        log << "QKD aborted error_rate=" << transcript.error_rate() << "\n";
        detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);
        return kExitAbort;
    }

    const std::string alice_key = bits;
    std::string bob_key = transcript.decoded_message();
    bob_key.resize(rs.key_bits);
    doc["alice_key"] = alice_key;
    doc["bob_key"] = bob_key;
    doc["match"] = alice_key == bob_key;
    log << "QKD alice=" << alice_key << " bob=" << bob_key
        << " match=" << (alice_key == bob_key ? "yes" : "no") << "\n";
    detail::emit(rs, detail::render(rs, doc, log.str()), out_stream);
    if (rs.out) {
        std::ofstream(*rs.out + ".alice", std::ios::binary) << alice_key << "\n";
        std::ofstream(*rs.out + ".bob", std::ios::binary) << bob_key << "\n";
    }
    return alice_key == bob_key ? kExitOk : kExitFailure;
}

/// Dispatches a parsed command line and maps errors onto exit codes.
inline int run_command(const RunSpec& rs, std::ostream& out_stream = std::cout,
                       std::ostream& err_stream = std::cerr) {
    try {
        if (rs.format != "json" && rs.format != "log") {
            throw contract_error("format must be 'json' or 'log'");
        }
        if (rs.subcommand == "run") {
            return cmd_run(rs, out_stream);
        }
        if (rs.subcommand == "attack-sweep") {
            return cmd_attack_sweep(rs, out_stream);
        }
        if (rs.subcommand == "table") {
            return cmd_table(rs, out_stream);
        }
        if (rs.subcommand == "verify") {
            return cmd_verify(rs, out_stream);
        }
        if (rs.subcommand == "efficiency") {
            return cmd_efficiency(rs, out_stream);
        }
        if (rs.subcommand == "qkd") {
            return cmd_qkd(rs, out_stream);
        }
        throw lookup_error("unknown subcommand '" + rs.subcommand + "'");
    } catch (const corruption_error& e) {
        err_stream << "error: " << e.what() << "\n";
        return kExitAbort;
    } catch (const ambiguity_error& e) {
        err_stream << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const consistency_error& e) {
        err_stream << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const nlohmann::json::exception& e) {
        err_stream << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err_stream << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace dsqc::cli
