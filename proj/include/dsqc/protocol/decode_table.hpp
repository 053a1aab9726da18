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

#include <map>
#include <string>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/basis.hpp"
#include "dsqc/qcore/measurement.hpp"
#include "dsqc/states/generic_form.hpp"

namespace dsqc::protocol {

using qcore::OrthonormalBasis;
using qcore::StateVector;
using states::GenericFormSpec;

/// Probabilities below this are treated as exact zeros when enumerating
/// outcome support.
inline constexpr double kSupportTol = 1e-9;

/// Two-qubit entanglement-swapping sets get Bell labels; wider sets use the
/// cat basis directly. cat_basis(2) is the Bell basis up to relabeling, so
/// this is purely a labeling choice.
inline OrthonormalBasis announcement_basis(std::size_t k) {
    return k == 2 ? qcore::bell_basis() : qcore::cat_basis(k);
}

/// Qubit split for the swapping measurement on a combined register
/// |e_j>(0..m-1) |e_i>(m..2m-1) |f_i>(2m..2m+l-1): the first set takes the
/// leading p qubits of both cat registers, the second set the trailing m-p of
/// both, with p = m/2 for even m and (m-1)/2 otherwise.
struct SwapLayout {
    std::size_t m = 0;
    std::size_t p = 0;
    std::vector<std::size_t> first_set;
    std::vector<std::size_t> second_set;
    OrthonormalBasis first_basis;
    OrthonormalBasis second_basis;
};

inline SwapLayout swap_layout(std::size_t m) {
    if (m < 2) {
        throw contract_error("swap_layout: m must be >= 2");
    }
    SwapLayout lay;
    lay.m = m;
    lay.p = (m % 2 == 0) ? m / 2 : (m - 1) / 2;
    for (std::size_t i = 0; i < lay.p; ++i) {
        lay.first_set.push_back(i);
    }
    for (std::size_t i = 0; i < lay.p; ++i) {
        lay.first_set.push_back(m + i);
    }
    for (std::size_t i = lay.p; i < m; ++i) {
        lay.second_set.push_back(i);
    }
    for (std::size_t i = lay.p; i < m; ++i) {
        lay.second_set.push_back(m + i);
    }
    lay.first_basis = announcement_basis(2 * lay.p);
    lay.second_basis = announcement_basis(2 * (m - lay.p));
    return lay;
}

/// Exact joint distribution of the two announcement outcomes for a combined
/// state, indexed [first][second].
inline std::vector<std::vector<double>> announcement_distribution(const StateVector& combined,
                                                                  const SwapLayout& lay) {
    const auto first_probs = qcore::outcome_distribution(combined, lay.first_set, lay.first_basis);
    std::vector<std::vector<double>> joint(first_probs.size(),
                                           std::vector<double>(lay.second_basis.size(), 0.0));
    for (std::size_t a1 = 0; a1 < first_probs.size(); ++a1) {
        if (first_probs[a1] <= kSupportTol) {
            continue;
        }
        auto [p1, collapsed] = qcore::apply_outcome(combined, lay.first_set, lay.first_basis, a1);
        const auto second_probs =
            qcore::outcome_distribution(collapsed, lay.second_set, lay.second_basis);
        for (std::size_t a2 = 0; a2 < second_probs.size(); ++a2) {
            joint[a1][a2] = p1 * second_probs[a2];
        }
    }
    return joint;
}

/// Map (first announcement, second announcement, Bob's outcome) -> message
/// value, per state family. Total over every triple that can occur.
struct DecodeTable {
    struct Key {
        std::string first;
        std::string second;
        std::string bob;
        auto operator<=>(const Key&) const = default;
    };

    std::string first_basis_name;
    std::string second_basis_name;
    std::string bob_basis_name;
    std::map<Key, unsigned> rows;

    unsigned lookup(const std::string& first, const std::string& second,
                    const std::string& bob) const {
        const auto it = rows.find(Key{first, second, bob});
        if (it == rows.end()) {
            throw corruption_error("decode table has no entry for (" + first + ", " + second +
                                   ", " + bob + "): tampering or mismatched state family");
        }
        return it->second;
    }
};

/// Builds the decode table by exact enumeration: for every message j, expand
/// the combined state |e_j>|psi> over both announcement outcomes and Bob's
/// basis, and record every support triple. A triple reachable under two
/// different messages would make the family unusable, and throws.
inline DecodeTable build_decode_table(const GenericFormSpec& spec,
                                      const OrthonormalBasis& e_basis,
                                      const OrthonormalBasis& f_basis) {
    const StateVector psi = states::build_generic(spec, e_basis, f_basis);
    const SwapLayout lay = swap_layout(spec.m);

    std::vector<std::size_t> bob_set;
    for (std::size_t i = 0; i < spec.l; ++i) {
        bob_set.push_back(2 * spec.m + i);
    }

    DecodeTable table;
    table.first_basis_name = lay.first_basis.name;
    table.second_basis_name = lay.second_basis.name;
    table.bob_basis_name = f_basis.name;

    for (unsigned j = 0; j < spec.message_space(); ++j) {
        const StateVector combined =
            qcore::tensor(e_basis.elements[spec.e_selection[j]], psi);
        const auto first_probs =
            qcore::outcome_distribution(combined, lay.first_set, lay.first_basis);
        for (std::size_t a1 = 0; a1 < first_probs.size(); ++a1) {
            if (first_probs[a1] <= kSupportTol) {
                continue;
            }
            auto [p1, after_first] =
                qcore::apply_outcome(combined, lay.first_set, lay.first_basis, a1);
            const auto second_probs =
                qcore::outcome_distribution(after_first, lay.second_set, lay.second_basis);
            for (std::size_t a2 = 0; a2 < second_probs.size(); ++a2) {
                if (second_probs[a2] <= kSupportTol) {
                    continue;
                }
                auto [p2, after_second] =
                    qcore::apply_outcome(after_first, lay.second_set, lay.second_basis, a2);
                const auto bob_probs = qcore::outcome_distribution(after_second, bob_set, f_basis);
                for (std::size_t b = 0; b < bob_probs.size(); ++b) {
                    if (bob_probs[b] <= kSupportTol) {
                        continue;
                    }
                    DecodeTable::Key key{lay.first_basis.labels[a1], lay.second_basis.labels[a2],
                                         f_basis.labels[b]};
                    const auto [it, inserted] = table.rows.emplace(key, j);
                    if (!inserted && it->second != j) {
                        throw ambiguity_error(
                            "decode table ambiguity: outcomes (" + key.first + ", " + key.second +
                            ", " + key.bob + ") occur for messages " +
                            std::to_string(it->second) + " and " + std::to_string(j));
                    }
                }
            }
        }
    }
    return table;
}

}  // namespace dsqc::protocol
