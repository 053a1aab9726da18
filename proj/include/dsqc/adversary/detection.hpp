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

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dsqc/adversary/attack.hpp"
#include "dsqc/error.hpp"
#include "dsqc/protocol/session.hpp"
#include "dsqc/qcore/measurement.hpp"

namespace dsqc::adversary {

using protocol::ProtocolConfig;
using qcore::StateVector;

namespace detail {

/// Full in-flight register for exact analysis: copy c occupies positions
/// [c*(m+l), (c+1)*(m+l)) with its carriers in the trailing l slots, decoy
/// pair t sits at base + (2t, 2t+1).
struct ExactLayout {
    std::optional<StateVector> state;
    std::vector<std::size_t> sequence;
    std::vector<std::pair<std::size_t, std::size_t>> decoy_pairs;
};

inline ExactLayout build_layout(const ProtocolConfig& cfg) {
    const auto& st = cfg.state;
    const std::size_t m = st.spec.m;
    const std::size_t l = st.spec.l;
    const std::size_t dp = cfg.decoy_pair_count();

    ExactLayout lay;
    const auto bell = qcore::bell_basis();
    for (std::size_t c = 0; c < cfg.copies; ++c) {
        lay.state = lay.state ? qcore::tensor(*lay.state, st.vector) : st.vector;
        for (std::size_t i = 0; i < l; ++i) {
            lay.sequence.push_back(c * (m + l) + m + i);
        }
    }
    const std::size_t base = cfg.copies * (m + l);
    for (std::size_t t = 0; t < dp; ++t) {
        lay.state = lay.state ? qcore::tensor(*lay.state, bell.elements[0]) : bell.elements[0];
        lay.sequence.push_back(base + 2 * t);
        lay.sequence.push_back(base + 2 * t + 1);
        lay.decoy_pairs.emplace_back(base + 2 * t, base + 2 * t + 1);
    }
    return lay;
}

/// Mean probability over decoy pairs that Bob's Bell check still reads psi+.
inline double mean_pass(const StateVector& s,
                        const std::vector<std::pair<std::size_t, std::size_t>>& decoy_pairs) {
    const auto bell = qcore::bell_basis();
    double total = 0.0;
    for (const auto& [a, b] : decoy_pairs) {
        total += qcore::outcome_distribution(s, {a, b}, bell)[0];
    }
    return total / static_cast<double>(decoy_pairs.size());
}

struct EveMeasurement {
    std::vector<std::size_t> positions;
    const qcore::OrthonormalBasis* basis;
};

/// Expected mean pass probability over every branch of Eve's measurement
/// sequence, enumerated exactly.
inline double branch_mean_pass(const StateVector& s,
                               const std::vector<EveMeasurement>& ops,
                               std::size_t next,
                               const std::vector<std::pair<std::size_t, std::size_t>>& decoys) {
    if (next == ops.size()) {
        return mean_pass(s, decoys);
    }
    const auto& op = ops[next];
    const auto dist = qcore::outcome_distribution(s, op.positions, *op.basis);
    double acc = 0.0;
    for (std::size_t o = 0; o < dist.size(); ++o) {
        if (dist[o] <= 0.0) {
            continue;
        }
        auto [p, post] = qcore::apply_outcome(s, op.positions, *op.basis, o);
        acc += dist[o] * branch_mean_pass(post, ops, next + 1, decoys);
    }
    return acc;
}

/// Unordered pairings of `items`, each with at most one leftover element.
struct Pairing {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::optional<std::size_t> leftover;
};

inline void enumerate_pairings_of(std::vector<std::size_t> items,
                                  Pairing& current,
                                  const std::function<void(const Pairing&)>& emit) {
    if (items.empty()) {
        emit(current);
        return;
    }
    if (items.size() == 1) {
        current.leftover = items[0];
        emit(current);
        current.leftover.reset();
        return;
    }
    const std::size_t head = items[0];
    for (std::size_t k = 1; k < items.size(); ++k) {
        std::vector<std::size_t> remaining;
        for (std::size_t t = 1; t < items.size(); ++t) {
            if (t != k) {
                remaining.push_back(items[t]);
            }
        }
        current.pairs.emplace_back(head, items[k]);
        enumerate_pairings_of(std::move(remaining), current, emit);
        current.pairs.pop_back();
    }
}

/// All pairings a uniformly random permutation can induce for Eve's adjacent
/// measurement, each equally likely. For odd counts every leftover choice is
/// paired with every matching of the rest.
inline std::vector<Pairing> uniform_pairings(const std::vector<std::size_t>& positions) {
    std::vector<Pairing> out;
    if (positions.size() % 2 == 0) {
        Pairing current;
        enumerate_pairings_of(positions, current,
                              [&out](const Pairing& p) { out.push_back(p); });
        return out;
    }
    for (std::size_t skip = 0; skip < positions.size(); ++skip) {
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < positions.size(); ++t) {
            if (t != skip) {
                rest.push_back(positions[t]);
            }
        }
        Pairing current;
        current.leftover = positions[skip];
        enumerate_pairings_of(std::move(rest), current,
                              [&out](const Pairing& p) { out.push_back(p); });
    }
    return out;
}

inline std::vector<EveMeasurement> to_ops(const Pairing& pairing,
                                          const qcore::OrthonormalBasis& bell,
                                          const qcore::OrthonormalBasis& comp1) {
    std::vector<EveMeasurement> ops;
    for (const auto& [a, b] : pairing.pairs) {
        ops.push_back(EveMeasurement{{a, b}, &bell});
    }
    if (pairing.leftover) {
        ops.push_back(EveMeasurement{{*pairing.leftover}, &comp1});
    }
    return ops;
}

}  // namespace detail

/// Exact per-decoy-pair detection probability of `strategy` against `cfg`:
/// the probability that one decoy pair fails Bob's psi+ check, averaged over
/// Eve's outcome randomness and (when no permutation is pinned) the uniform
/// permutation ensemble. Everything is computed by exact enumeration on the
/// in-flight register; configurations too large to enumerate are rejected.
inline double detection_probability_exact(const ProtocolConfig& cfg,
                                          const AttackStrategy& strategy) {
    const std::size_t dp = cfg.decoy_pair_count();
    if (dp == 0 || strategy.kind == AttackKind::none) {
        return 0.0;
    }
    detail::ExactLayout lay = detail::build_layout(cfg);
    const StateVector& state = *lay.state;
    const std::size_t t = lay.sequence.size();
    static const auto bell = qcore::bell_basis();
    static const auto comp1 = qcore::computational_basis(1);
    static const auto comp2 = qcore::computational_basis(2);

    switch (strategy.kind) {
        case AttackKind::none:
            return 0.0;

        case AttackKind::cnot_clone: {
            if (state.num_qubits() + t > qcore::kMaxQubits) {
                throw contract_error("detection_probability_exact: size cap exceeded");
            }
            StateVector full = state;
            std::size_t ancilla = state.num_qubits();
            for (std::size_t k = 0; k < t; ++k) {
                full = qcore::tensor(full, qcore::StateVector::basis_state(1, 0));
            }
            for (std::size_t k = 0; k < t; ++k) {
                full = qcore::apply_cnot(full, lay.sequence[k], ancilla + k);
            }
            return 1.0 - detail::mean_pass(full, lay.decoy_pairs);
        }

        case AttackKind::measure_resend: {
            if (strategy.basis == EveBasis::computational) {
                // Measuring the other positions in a product basis cannot
                // move a pair's computational marginal, so each decoy pair is
                // scored from its own two-qubit distribution.
                double pass = 0.0;
                for (const auto& [a, b] : lay.decoy_pairs) {
                    const auto dist = qcore::outcome_distribution(state, {a, b}, comp2);
                    for (std::size_t z = 0; z < dist.size(); ++z) {
                        const auto overlap =
                            qcore::inner_product(bell.elements[0], comp2.elements[z]);
                        pass += dist[z] * std::norm(overlap);
                    }
                }
                return 1.0 - pass / static_cast<double>(lay.decoy_pairs.size());
            }

            std::vector<detail::Pairing> pairings;
            if (cfg.fixed_permutation) {
                const auto wire = cfg.fixed_permutation->apply(lay.sequence);
                const auto position_pairs = strategy.pairing_override
                                                ? *strategy.pairing_override
                                                : adjacent_pairing(wire.size());
                detail::Pairing pinned;
                std::vector<bool> covered(wire.size(), false);
                for (const auto& [u, v] : position_pairs) {
                    pinned.pairs.emplace_back(wire.at(u), wire.at(v));
                    covered.at(u) = covered.at(v) = true;
                }
                for (std::size_t k = 0; k < wire.size(); ++k) {
                    if (!covered[k]) {
                        if (pinned.leftover) {
                            throw contract_error(
                                "detection_probability_exact: pairing leaves several "
                                "positions unmeasured");
                        }
                        pinned.leftover = wire[k];
                    }
                }
                pairings.push_back(std::move(pinned));
            } else {
                // Any fixed positional pairing under a uniform permutation
                // induces the uniform pairing ensemble over the qubits.
                if (t > 8) {
                    throw contract_error("detection_probability_exact: size cap exceeded");
                }
                pairings = detail::uniform_pairings(lay.sequence);
            }

            double pass = 0.0;
            for (const auto& pairing : pairings) {
                const auto ops = detail::to_ops(pairing, bell, comp1);
                pass += detail::branch_mean_pass(state, ops, 0, lay.decoy_pairs);
            }
            return 1.0 - pass / static_cast<double>(pairings.size());
        }

        case AttackKind::capture_replace: {
            ProtocolConfig fake_cfg = cfg;
            if (strategy.fake_state_name) {
                fake_cfg.state = states::named_state(*strategy.fake_state_name);
            }
            detail::ExactLayout fake = detail::build_layout(fake_cfg);
            const StateVector& fstate = *fake.state;
            const std::size_t ft = fake.sequence.size();
            if (ft != t) {
                throw contract_error(
                    "detection_probability_exact: fake sequence length mismatch");
            }

            double pass = 0.0;
            if (cfg.fixed_permutation) {
                const auto& perm = *cfg.fixed_permutation;
                std::size_t slot = cfg.carrier_count();
                for (std::size_t pair = 0; pair < dp; ++pair, slot += 2) {
                    const std::size_t u = perm(slot);
                    const std::size_t v = perm(slot + 1);
                    pass += qcore::outcome_distribution(
                        fstate, {fake.sequence[u], fake.sequence[v]}, bell)[0];
                }
                return 1.0 - pass / static_cast<double>(dp);
            }
            // Under a uniform permutation each decoy slot pair lands on a
            // uniform ordered pair of distinct positions of Eve's sequence.
            for (std::size_t u = 0; u < ft; ++u) {
                for (std::size_t v = 0; v < ft; ++v) {
                    if (u == v) {
                        continue;
                    }
                    pass += qcore::outcome_distribution(
                        fstate, {fake.sequence[u], fake.sequence[v]}, bell)[0];
                }
            }
            return 1.0 - pass / static_cast<double>(ft * (ft - 1));
        }
    }
    throw consistency_error("detection_probability_exact: bad strategy kind");
}

/// Monte-Carlo detection estimate with its binomial standard error, from
/// full protocol sessions. Reproducible: trial k runs on stream split(k).
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::size_t pairs_checked = 0;
    std::size_t failures = 0;
};

inline McEstimate detection_probability_mc(const ProtocolConfig& cfg,
                                           const AttackStrategy& strategy,
                                           std::size_t trials,
                                           std::uint64_t seed) {
    if (trials < 1) {
        throw contract_error("detection_probability_mc: trials must be >= 1");
    }
    qcore::RandomStream root(seed);
    McEstimate mc;
    mc.trials = trials;
    for (std::size_t k = 0; k < trials; ++k) {
        qcore::RandomStream rng = root.split(k);
        const auto transcript = protocol::run_protocol(cfg, "", strategy, rng);
        for (const auto& event : transcript.events) {
            if (const auto* check = std::get_if<protocol::DecoyCheckResult>(&event)) {
                mc.pairs_checked += check->pairs_checked;
                mc.failures += static_cast<std::size_t>(std::llround(
                    check->error_rate * static_cast<double>(check->pairs_checked)));
            }
        }
    }
    if (mc.pairs_checked > 0) {
        mc.estimate = static_cast<double>(mc.failures) / static_cast<double>(mc.pairs_checked);
        mc.std_error = std::sqrt(mc.estimate * (1.0 - mc.estimate) /
                                 static_cast<double>(mc.pairs_checked));
    }
    return mc;
}

/// The cross-pairing the Bell measure-resend analysis quotes: two decoy pairs
/// (a,b), (c,d) and no carriers, with the permutation pinned so Eve's
/// adjacent pairing measures (a,c) and (b,d).
inline ProtocolConfig crossed_decoy_fixture(states::NamedState family) {
    ProtocolConfig cfg{std::move(family)};
    cfg.copies = 0;
    cfg.decoy_pairs = 2;
    cfg.fixed_permutation = qcore::PermutationMap({0, 2, 1, 3});
    return cfg;
}

}  // namespace dsqc::adversary
