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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsqc/adversary/attack.hpp"
#include "dsqc/error.hpp"
#include "dsqc/protocol/decode_table.hpp"
#include "dsqc/protocol/transcript.hpp"
#include "dsqc/qcore/system.hpp"
#include "dsqc/states/catalog.hpp"

namespace dsqc::protocol {

using qcore::QubitId;
using qcore::QuantumSystem;
using qcore::RandomStream;

/// All shape parameters of a protocol session.
struct ProtocolConfig {
    states::NamedState state;
    std::size_t copies = 1;
    std::optional<std::size_t> decoy_pairs;
    double error_threshold = 0.0;
    std::uint64_t seed = 0;
    /// Pins the particle permutation instead of drawing it; fixtures use this
    /// to reproduce specific pairings.
    std::optional<PermutationMap> fixed_permutation;

    std::size_t carrier_count() const { return copies * state.spec.l; }

    /// Defaults to one decoy pair per two carrier qubits, rounded up when the
    /// carrier count is odd.
    std::size_t decoy_pair_count() const {
        return decoy_pairs ? *decoy_pairs : (carrier_count() + 1) / 2;
    }

    std::size_t sequence_length() const { return carrier_count() + 2 * decoy_pair_count(); }
};

/// State after Step 1: N prepared copies, Alice holding the first m qubits of
/// each, the carrier qubits collected into the ordered sequence P_B.
struct PreparedRun {
    QuantumSystem system;
    std::vector<std::vector<QubitId>> alice_registers;
    std::vector<QubitId> carriers;
};

inline PreparedRun alice_prepare(const ProtocolConfig& cfg) {
    PreparedRun run;
    const auto& st = cfg.state;
    for (std::size_t c = 0; c < cfg.copies; ++c) {
        const auto ids = run.system.add_state(st.vector);
        run.alice_registers.emplace_back(ids.begin(), ids.begin() + st.spec.m);
        run.carriers.insert(run.carriers.end(), ids.begin() + st.spec.m, ids.end());
    }
    return run;
}

/// The transmitted sequence: decoy Bell pairs appended to P_B, then the whole
/// sequence reordered by a (random) permutation.
struct FlightPlan {
    std::vector<QubitId> wire;
    PermutationMap permutation{std::vector<std::size_t>{}};
    /// Post-permutation wire positions holding each decoy pair, in pair order.
    std::vector<std::pair<std::size_t, std::size_t>> decoy_coordinates;
};

inline FlightPlan insert_decoys_and_permute(PreparedRun& run,
                                            std::size_t decoy_pairs,
                                            RandomStream& rng,
                                            const std::optional<PermutationMap>& fixed = {}) {
    const auto bell = qcore::bell_basis();
    std::vector<QubitId> sequence = run.carriers;
    std::vector<std::pair<std::size_t, std::size_t>> pair_slots;
    for (std::size_t t = 0; t < decoy_pairs; ++t) {
        const auto ids = run.system.add_state(bell.elements[0]);
        pair_slots.emplace_back(sequence.size(), sequence.size() + 1);
        sequence.insert(sequence.end(), ids.begin(), ids.end());
    }

    FlightPlan flight;
    flight.permutation = fixed ? *fixed : qcore::random_permutation(sequence.size(), rng);
    if (flight.permutation.size() != sequence.size()) {
        throw contract_error("insert_decoys_and_permute: fixed permutation size mismatch");
    }
    flight.wire = flight.permutation.apply(sequence);
    for (const auto& [a, b] : pair_slots) {
        flight.decoy_coordinates.emplace_back(flight.permutation(a), flight.permutation(b));
    }
    return flight;
}

/// Step 4: Bob Bell-measures the disclosed decoy pairs and compares the error
/// rate against the threshold.
inline DecoyCheckResult bob_check_decoys(QuantumSystem& sys,
                                         const FlightPlan& flight,
                                         double threshold,
                                         RandomStream& rng) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw contract_error("bob_check_decoys: threshold must be in [0, 1]");
    }
    const auto bell = qcore::bell_basis();
    std::size_t failures = 0;
    for (const auto& [a, b] : flight.decoy_coordinates) {
        const auto rec = sys.measure({flight.wire.at(a), flight.wire.at(b)}, bell, rng);
        if (rec.outcome_index != 0) {
            ++failures;
        }
    }
    DecoyCheckResult result;
    result.pairs_checked = flight.decoy_coordinates.size();
    result.error_rate = result.pairs_checked == 0
                            ? 0.0
                            : static_cast<double>(failures) /
                                  static_cast<double>(result.pairs_checked);
    result.pass = result.error_rate <= threshold;
    return result;
}

/// Step 5 for one copy: Alice prepares a fresh |e_{j}> register (0-indexed
/// into the selected elements) next to that copy.
inline std::vector<QubitId> alice_encode(QuantumSystem& sys,
                                         const states::NamedState& st,
                                         unsigned message_value) {
    if (message_value >= st.spec.message_space()) {
        throw contract_error("alice_encode: message value out of range");
    }
    return sys.add_state(st.e_basis.elements[st.spec.e_selection[message_value]]);
}

/// Step 6 for one copy: the generalized entanglement swap. Measures the first
/// p qubits of both cat registers in the 2p-qubit basis and the remaining
/// 2(m-p) qubits in their basis, and returns both records for announcement.
inline std::pair<qcore::MeasurementRecord, qcore::MeasurementRecord> alice_swap_measure(
    QuantumSystem& sys,
    const std::vector<QubitId>& encode_register,
    const std::vector<QubitId>& alice_register,
    RandomStream& rng) {
    if (encode_register.size() != alice_register.size()) {
        throw contract_error("alice_swap_measure: register sizes differ");
    }
    const std::size_t m = alice_register.size();
    const SwapLayout lay = swap_layout(m);

    std::vector<QubitId> first_ids;
    std::vector<QubitId> second_ids;
    for (std::size_t i = 0; i < lay.p; ++i) {
        first_ids.push_back(encode_register[i]);
    }
    for (std::size_t i = 0; i < lay.p; ++i) {
        first_ids.push_back(alice_register[i]);
    }
    for (std::size_t i = lay.p; i < m; ++i) {
        second_ids.push_back(encode_register[i]);
    }
    for (std::size_t i = lay.p; i < m; ++i) {
        second_ids.push_back(alice_register[i]);
    }

    auto first = sys.measure(first_ids, lay.first_basis, rng);
    auto second = sys.measure(second_ids, lay.second_basis, rng);
    return {std::move(first), std::move(second)};
}

/// Step 7 for one copy: Bob measures his qubits in the f basis and decodes
/// through the table.
inline unsigned bob_decode(QuantumSystem& sys,
                           const std::vector<QubitId>& bob_register,
                           const qcore::OrthonormalBasis& f_basis,
                           const SwapAnnouncement& announcement,
                           const DecodeTable& table,
                           RandomStream& rng) {
    const auto rec = sys.measure(bob_register, f_basis, rng);
    return table.lookup(announcement.first_outcome, announcement.second_outcome,
                        rec.outcome_label);
}

inline unsigned bits_to_value(const std::string& bits) {
    unsigned v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw contract_error("message must be a binary string");
        }
        v = (v << 1) | static_cast<unsigned>(c - '0');
    }
    return v;
}

/// Runs the full session: preparation, decoy insertion and permutation,
/// optional attack on the in-flight sequence, disclosure, Bob's check (abort
/// on failure), then per-copy encoding, swapping, announcement and decoding.
inline Transcript run_protocol(const ProtocolConfig& cfg,
                               const std::string& message,
                               const adversary::AttackStrategy& attack,
                               RandomStream& rng) {
    const auto& st = cfg.state;
    const std::size_t n = st.spec.n;
    if (message.size() > cfg.copies * n) {
        throw contract_error("run_protocol: message longer than copies * n bits");
    }

    Transcript transcript;
    PreparedRun run = alice_prepare(cfg);
    FlightPlan flight =
        insert_decoys_and_permute(run, cfg.decoy_pair_count(), rng, cfg.fixed_permutation);
    transcript.events.push_back(QubitTransfer{flight.wire.size()});

    adversary::apply_attack(run.system, flight.wire, attack, st, cfg.copies,
                            cfg.decoy_pair_count(), rng);

    transcript.events.push_back(Ack{});
    transcript.events.push_back(
        PermutationDisclosure{flight.permutation, flight.decoy_coordinates});

    const DecoyCheckResult check =
        bob_check_decoys(run.system, flight, cfg.error_threshold, rng);
    transcript.events.push_back(check);
    if (!check.pass) {
        return transcript;
    }

    const std::size_t blocks = (message.size() + n - 1) / n;
    if (blocks == 0) {
        return transcript;
    }
    const DecodeTable table = build_decode_table(st.spec, st.e_basis, st.f_basis);
    for (std::size_t copy = 0; copy < blocks; ++copy) {
        std::string block = message.substr(copy * n, n);
        block.resize(n, '0');
        const unsigned j = bits_to_value(block);

        transcript.events.push_back(EncodedBlockIndex{copy});
        const auto encode_register = alice_encode(run.system, st, j);
        const auto [first, second] =
            alice_swap_measure(run.system, encode_register, run.alice_registers[copy], rng);
        SwapAnnouncement announcement{copy, first.outcome_label, second.outcome_label};
        transcript.events.push_back(announcement);

        std::vector<QubitId> bob_register(run.carriers.begin() + copy * st.spec.l,
                                          run.carriers.begin() + (copy + 1) * st.spec.l);
        const unsigned decoded =
            bob_decode(run.system, bob_register, st.f_basis, announcement, table, rng);
        transcript.events.push_back(DecodeResult{copy, qcore::bitstring(decoded, n)});
    }
    return transcript;
}

}  // namespace dsqc::protocol
