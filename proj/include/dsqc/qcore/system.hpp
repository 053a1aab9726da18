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

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/measurement.hpp"
#include "dsqc/qcore/statevector.hpp"

namespace dsqc::qcore {

/// Stable handle for one qubit tracked by a QuantumSystem.
using QubitId = std::size_t;

/// A set of mutually unentangled registers ("islands") addressed by stable
/// qubit ids. Joint operations tensor islands together on demand; a
/// measurement splits its qubits back out, since the post-measurement state
/// factors exactly. This keeps every dense register at the width actually
/// entangled, so a many-copy protocol run never exceeds the register cap.
class QuantumSystem {
  public:
    /// Adds an independent register; returns one id per qubit, in register
    /// order.
    std::vector<QubitId> add_state(StateVector state) {
        const std::size_t k = state.num_qubits();
        std::vector<QubitId> ids(k);
        for (std::size_t i = 0; i < k; ++i) {
            ids[i] = next_id_++;
        }
        const std::size_t isl = islands_.size();
        islands_.push_back(Island{std::move(state), ids});
        for (QubitId q : ids) {
            island_of_[q] = isl;
        }
        return ids;
    }

    QubitId add_zero_qubit() { return add_state(StateVector::basis_state(1, 0))[0]; }

    std::size_t total_qubits() const {
        std::size_t total = 0;
        for (const auto& isl : islands_) {
            total += isl.members.size();
        }
        return total;
    }

    /// Born probabilities for measuring `ids` in `basis`; does not disturb
    /// the system.
    std::vector<double> outcome_distribution(const std::vector<QubitId>& ids,
                                             const OrthonormalBasis& basis) const {
        auto [joint, members] = joint_of(involved_islands(ids));
        return qcore::outcome_distribution(joint, positions_of(ids, members), basis);
    }

    /// Projective measurement of `ids` (in the given order) in `basis`. The
    /// measured qubits end up in their own island holding the outcome
    /// element; the remainder is renormalized.
    MeasurementRecord measure(const std::vector<QubitId>& ids,
                              const OrthonormalBasis& basis,
                              RandomStream& rng) {
        const std::size_t isl_idx = merge(involved_islands(ids));
        Island island = std::move(islands_[isl_idx]);
        const auto positions = positions_of(ids, island.members);

        const auto probs = qcore::outcome_distribution(island.state, positions, basis);
        const std::size_t outcome = sample_index(probs, rng);

        detail::SubsetIndexer ix(island.state.num_qubits(), positions);
        auto rest = detail::project_residual(island.state, ix, basis.elements[outcome]);

        std::vector<QubitId> rest_members;
        rest_members.reserve(ix.rest_positions.size());
        for (std::size_t pos : ix.rest_positions) {
            rest_members.push_back(island.members[pos]);
        }

        place(isl_idx, Island{basis.elements[outcome], ids});
        if (!rest_members.empty()) {
            const std::size_t r = rest_members.size();
            append_island(Island{StateVector::normalized(r, std::move(rest)),
                                 std::move(rest_members)});
        }
        return MeasurementRecord{basis.name, outcome, basis.labels[outcome], probs[outcome],
                                 ids};
    }

    /// Deterministic variant: forces `outcome` instead of sampling; returns
    /// its Born probability.
    double apply_outcome(const std::vector<QubitId>& ids,
                         const OrthonormalBasis& basis,
                         std::size_t outcome) {
        const std::size_t isl_idx = merge(involved_islands(ids));
        Island island = std::move(islands_[isl_idx]);
        const auto positions = positions_of(ids, island.members);

        detail::SubsetIndexer ix(island.state.num_qubits(), positions);
        auto rest = detail::project_residual(island.state, ix, basis.elements.at(outcome));
        double p = 0.0;
        for (const auto& c : rest) {
            p += std::norm(c);
        }
        if (p <= 0.0) {
            throw contract_error("QuantumSystem::apply_outcome: zero-probability outcome");
        }

        std::vector<QubitId> rest_members;
        for (std::size_t pos : ix.rest_positions) {
            rest_members.push_back(island.members[pos]);
        }
        place(isl_idx, Island{basis.elements[outcome], ids});
        if (!rest_members.empty()) {
            const std::size_t r = rest_members.size();
            append_island(Island{StateVector::normalized(r, std::move(rest)),
                                 std::move(rest_members)});
        }
        return p;
    }

    /// CNOT with `control` as control and `target` as target.
    void apply_cnot(QubitId control, QubitId target) {
        if (control == target) {
            throw contract_error("apply_cnot: control equals target");
        }
        const std::size_t isl_idx = merge(involved_islands({control, target}));
        Island& island = islands_[isl_idx];
        const auto pos = positions_of({control, target}, island.members);
        island.state = qcore::apply_cnot(island.state, pos[0], pos[1]);
    }

    /// Joint pure state of `ids`, with qubit order matching `ids`. The ids
    /// must cover every island they touch, otherwise the requested subsystem
    /// would not be pure.
    StateVector joint_state(const std::vector<QubitId>& ids) const {
        auto [joint, members] = joint_of(involved_islands(ids));
        if (members.size() != ids.size()) {
            throw contract_error("joint_state: ids do not cover the entangled islands");
        }
        std::vector<std::size_t> mapping(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto it = std::find(ids.begin(), ids.end(), members[i]);
            if (it == ids.end()) {
                throw contract_error("joint_state: ids do not cover the entangled islands");
            }
            mapping[i] = static_cast<std::size_t>(it - ids.begin());
        }
        return permute_qubits(joint, PermutationMap(std::move(mapping)));
    }

  private:
    struct Island {
        StateVector state;
        std::vector<QubitId> members;
    };

    std::vector<std::size_t> involved_islands(const std::vector<QubitId>& ids) const {
        std::vector<std::size_t> found;
        for (QubitId q : ids) {
            const auto it = island_of_.find(q);
            if (it == island_of_.end()) {
                throw contract_error("QuantumSystem: unknown qubit id");
            }
            if (std::find(found.begin(), found.end(), it->second) == found.end()) {
                found.push_back(it->second);
            }
        }
        if (found.empty()) {
            throw contract_error("QuantumSystem: empty qubit list");
        }
        return found;
    }

    std::pair<StateVector, std::vector<QubitId>> joint_of(
        const std::vector<std::size_t>& isls) const {
        StateVector joint = islands_[isls[0]].state;
        std::vector<QubitId> members = islands_[isls[0]].members;
        for (std::size_t t = 1; t < isls.size(); ++t) {
            joint = tensor(joint, islands_[isls[t]].state);
            members.insert(members.end(), islands_[isls[t]].members.begin(),
                           islands_[isls[t]].members.end());
        }
        return {std::move(joint), std::move(members)};
    }

    static std::vector<std::size_t> positions_of(const std::vector<QubitId>& ids,
                                                 const std::vector<QubitId>& members) {
        std::vector<std::size_t> pos(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto it = std::find(members.begin(), members.end(), ids[i]);
            if (it == members.end()) {
                throw consistency_error("QuantumSystem: id missing from its island");
            }
            pos[i] = static_cast<std::size_t>(it - members.begin());
        }
        return pos;
    }

    /// Merges the given islands into one; returns its index.
    std::size_t merge(std::vector<std::size_t> isls) {
        if (isls.size() == 1) {
            return isls[0];
        }
        auto [joint, members] = joint_of(isls);
        std::size_t keep = isls[0];
        std::sort(isls.begin() + 1, isls.end(), std::greater<>());
        for (std::size_t t = 1; t < isls.size(); ++t) {
            const std::size_t dead = isls[t];
            const std::size_t last = islands_.size() - 1;
            if (dead != last) {
                islands_[dead] = std::move(islands_[last]);
                for (QubitId q : islands_[dead].members) {
                    island_of_[q] = dead;
                }
                if (keep == last) {
                    keep = dead;
                }
            }
            islands_.pop_back();
        }
        place(keep, Island{std::move(joint), std::move(members)});
        return keep;
    }

    void place(std::size_t idx, Island island) {
        for (QubitId q : island.members) {
            island_of_[q] = idx;
        }
        islands_[idx] = std::move(island);
    }

    void append_island(Island island) {
        const std::size_t idx = islands_.size();
        for (QubitId q : island.members) {
            island_of_[q] = idx;
        }
        islands_.push_back(std::move(island));
    }

    std::vector<Island> islands_;
    std::unordered_map<QubitId, std::size_t> island_of_;
    QubitId next_id_ = 0;
};

}  // namespace dsqc::qcore
