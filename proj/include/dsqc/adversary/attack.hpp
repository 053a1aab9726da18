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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/basis.hpp"
#include "dsqc/qcore/system.hpp"
#include "dsqc/states/catalog.hpp"

namespace dsqc::adversary {

using qcore::QubitId;
using qcore::QuantumSystem;
using qcore::RandomStream;

enum class AttackKind { none, measure_resend, cnot_clone, capture_replace };

enum class EveBasis { computational, bell_random_pairing };

/// Eavesdropping strategy descriptor.
///
/// For bell_random_pairing Eve measures consecutive positions (2i, 2i+1) of
/// the permuted sequence, since she cannot know the true partners; a leftover
/// qubit of an odd sequence is measured in the computational basis.
/// `pairing_override` pins her measured position pairs instead, which is how
/// fixtures reproduce a specific cross-pairing. For capture_replace Eve
/// substitutes a freshly prepared copy of the public state family (she knows
/// the family; only the permutation and decoy coordinates are secret), in
/// plain unpermuted order.
struct AttackStrategy {
    AttackKind kind = AttackKind::none;
    EveBasis basis = EveBasis::computational;
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> pairing_override;
    std::optional<std::string> fake_state_name;

    static AttackStrategy parse(const std::string& name) {
        if (name == "none") {
            return {};
        }
        if (name == "measure-resend-computational") {
            return {AttackKind::measure_resend, EveBasis::computational, {}, {}};
        }
        if (name == "measure-resend-bell") {
            return {AttackKind::measure_resend, EveBasis::bell_random_pairing, {}, {}};
        }
        if (name == "cnot-clone") {
            return {AttackKind::cnot_clone, EveBasis::computational, {}, {}};
        }
        if (name == "capture-replace") {
            return {AttackKind::capture_replace, EveBasis::computational, {}, {}};
        }
        throw lookup_error("unknown attack strategy '" + name + "'");
    }

    std::string name() const {
        switch (kind) {
            case AttackKind::none:
                return "none";
            case AttackKind::measure_resend:
                return basis == EveBasis::computational ? "measure-resend-computational"
                                                        : "measure-resend-bell";
            case AttackKind::cnot_clone:
                return "cnot-clone";
            case AttackKind::capture_replace:
                return "capture-replace";
        }
        throw consistency_error("AttackStrategy::name: bad kind");
    }
};

/// What Eve walks away with.
struct EveRecord {
    std::vector<qcore::MeasurementRecord> measurements;
    std::vector<QubitId> ancillas;
    std::vector<QubitId> captured;
};

/// Position pairs (2i, 2i+1); an odd trailing position stays unpaired.
inline std::vector<std::pair<std::size_t, std::size_t>> adjacent_pairing(std::size_t count) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i + 1 < count; i += 2) {
        pairs.emplace_back(i, i + 1);
    }
    return pairs;
}

/// Applies `strategy` to the in-flight permuted sequence `wire` (which
/// capture_replace rewrites to point at Eve's substitute qubits). `family`,
/// `copies` and `decoy_pairs` describe the public sequence shape Eve imitates
/// when substituting.
inline EveRecord apply_attack(QuantumSystem& sys,
                              std::vector<QubitId>& wire,
                              const AttackStrategy& strategy,
                              const states::NamedState& family,
                              std::size_t copies,
                              std::size_t decoy_pairs,
                              RandomStream& rng) {
    EveRecord record;
    switch (strategy.kind) {
        case AttackKind::none:
            return record;

        case AttackKind::measure_resend: {
            if (strategy.basis == EveBasis::computational) {
                const auto comp = qcore::computational_basis(1);
                for (QubitId q : wire) {
                    record.measurements.push_back(sys.measure({q}, comp, rng));
                }
                return record;
            }
            const auto bell = qcore::bell_basis();
            const auto comp = qcore::computational_basis(1);
            const auto pairs =
                strategy.pairing_override ? *strategy.pairing_override : adjacent_pairing(wire.size());
            std::vector<bool> covered(wire.size(), false);
            for (const auto& [u, v] : pairs) {
                if (u >= wire.size() || v >= wire.size() || u == v || covered[u] || covered[v]) {
                    throw contract_error("apply_attack: invalid Eve pairing");
                }
                covered[u] = covered[v] = true;
                record.measurements.push_back(sys.measure({wire[u], wire[v]}, bell, rng));
            }
            for (std::size_t i = 0; i < wire.size(); ++i) {
                if (!covered[i]) {
                    record.measurements.push_back(sys.measure({wire[i]}, comp, rng));
                }
            }
            return record;
        }

        case AttackKind::cnot_clone: {
            for (QubitId q : wire) {
                const QubitId ancilla = sys.add_zero_qubit();
                sys.apply_cnot(q, ancilla);
                record.ancillas.push_back(ancilla);
            }
            return record;
        }

        case AttackKind::capture_replace: {
            record.captured = wire;
            const states::NamedState fake = strategy.fake_state_name
                                                ? states::named_state(*strategy.fake_state_name)
                                                : family;
            std::vector<QubitId> substitute;
            for (std::size_t c = 0; c < copies; ++c) {
                const auto ids = sys.add_state(fake.vector);
                substitute.insert(substitute.end(), ids.begin() + fake.spec.m, ids.end());
            }
            const auto bell = qcore::bell_basis();
            for (std::size_t t = 0; t < decoy_pairs; ++t) {
                const auto ids = sys.add_state(bell.elements[0]);
                substitute.insert(substitute.end(), ids.begin(), ids.end());
            }
            wire = std::move(substitute);
            return record;
        }
    }
    throw consistency_error("apply_attack: bad strategy kind");
}

}  // namespace dsqc::adversary
