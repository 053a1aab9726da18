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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/basis.hpp"
#include "dsqc/qcore/rng.hpp"
#include "dsqc/qcore/statevector.hpp"

namespace dsqc::qcore {

/// One projective-measurement outcome. `probability` is the Born probability
/// of the outcome recomputed from the pre-measurement state.
struct MeasurementRecord {
    std::string basis_name;
    std::size_t outcome_index = 0;
    std::string outcome_label;
    double probability = 0.0;
    std::vector<std::size_t> qubit_indices;

    bool operator==(const MeasurementRecord&) const = default;
};

namespace detail {

/// Scatter tables mapping subset/complement sub-indices to full register
/// indices: full = subset_stride[x] | rest_stride[y].
struct SubsetIndexer {
    std::vector<std::size_t> subset_stride;
    std::vector<std::size_t> rest_stride;
    std::vector<std::size_t> rest_positions;

    SubsetIndexer(std::size_t num_qubits, const std::vector<std::size_t>& qubits) {
        std::vector<bool> taken(num_qubits, false);
        for (std::size_t q : qubits) {
            if (q >= num_qubits) {
                throw contract_error("measurement: qubit index out of range");
            }
            if (taken[q]) {
                throw contract_error("measurement: duplicate qubit index");
            }
            taken[q] = true;
        }
        for (std::size_t q = 0; q < num_qubits; ++q) {
            if (!taken[q]) {
                rest_positions.push_back(q);
            }
        }
        const std::size_t k = qubits.size();
        const std::size_t r = rest_positions.size();
        subset_stride.assign(std::size_t{1} << k, 0);
        for (std::size_t x = 0; x < subset_stride.size(); ++x) {
            for (std::size_t t = 0; t < k; ++t) {
                if ((x >> (k - 1 - t)) & 1u) {
                    subset_stride[x] |= std::size_t{1} << (num_qubits - 1 - qubits[t]);
                }
            }
        }
        rest_stride.assign(std::size_t{1} << r, 0);
        for (std::size_t y = 0; y < rest_stride.size(); ++y) {
            for (std::size_t t = 0; t < r; ++t) {
                if ((y >> (r - 1 - t)) & 1u) {
                    rest_stride[y] |= std::size_t{1} << (num_qubits - 1 - rest_positions[t]);
                }
            }
        }
    }
};

/// <element|_Q s: the unnormalized residual on the complement qubits
/// (ascending register order). Its squared norm is the outcome probability.
inline std::vector<Complex> project_residual(const StateVector& s,
                                             const SubsetIndexer& ix,
                                             const StateVector& element) {
    std::vector<Complex> rest(ix.rest_stride.size(), Complex{0.0, 0.0});
    for (std::size_t x = 0; x < ix.subset_stride.size(); ++x) {
        const Complex ex = std::conj(element.amplitude(x));
        if (ex == Complex{0.0, 0.0}) {
            continue;
        }
        const std::size_t base = ix.subset_stride[x];
        for (std::size_t y = 0; y < rest.size(); ++y) {
            rest[y] += ex * s.amplitude(base | ix.rest_stride[y]);
        }
    }
    return rest;
}

inline void check_measurement_args(const StateVector& s,
                                   const std::vector<std::size_t>& qubits,
                                   const OrthonormalBasis& basis) {
    if (qubits.size() != basis.num_qubits) {
        throw contract_error("measurement: qubit list size != basis qubit count");
    }
    if (basis.size() != (std::size_t{1} << basis.num_qubits)) {
        throw contract_error("measurement: basis is incomplete");
    }
    if (qubits.size() > s.num_qubits()) {
        throw contract_error("measurement: more qubits than the register holds");
    }
}

}  // namespace detail

/// Exact Born probabilities of every basis outcome on the given qubits.
/// Deterministic; the probabilities sum to 1 for any complete basis.
inline std::vector<double> outcome_distribution(const StateVector& s,
                                                const std::vector<std::size_t>& qubits,
                                                const OrthonormalBasis& basis) {
    detail::check_measurement_args(s, qubits, basis);
    detail::SubsetIndexer ix(s.num_qubits(), qubits);
    std::vector<double> probs(basis.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto rest = detail::project_residual(s, ix, basis.elements[i]);
        double p = 0.0;
        for (const auto& c : rest) {
            p += std::norm(c);
        }
        probs[i] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw consistency_error("outcome_distribution: probabilities sum to " +
                                std::to_string(total));
    }
    return probs;
}

/// Deterministically applies outcome `element_index`: returns its probability
/// and the normalized post-measurement state on the full register.
inline std::pair<double, StateVector> apply_outcome(const StateVector& s,
                                                    const std::vector<std::size_t>& qubits,
                                                    const OrthonormalBasis& basis,
                                                    std::size_t element_index) {
    detail::check_measurement_args(s, qubits, basis);
    detail::SubsetIndexer ix(s.num_qubits(), qubits);
    const StateVector& element = basis.elements.at(element_index);
    const auto rest = detail::project_residual(s, ix, element);
    double p = 0.0;
    for (const auto& c : rest) {
        p += std::norm(c);
    }
    if (p <= 0.0) {
        throw contract_error("apply_outcome: outcome has zero probability");
    }
    const double scale = 1.0 / std::sqrt(p);
    std::vector<Complex> amps(s.dim(), Complex{0.0, 0.0});
    for (std::size_t x = 0; x < ix.subset_stride.size(); ++x) {
        const Complex ex = element.amplitude(x);
        if (ex == Complex{0.0, 0.0}) {
            continue;
        }
        const std::size_t base = ix.subset_stride[x];
        for (std::size_t y = 0; y < rest.size(); ++y) {
            amps[base | ix.rest_stride[y]] = ex * rest[y] * scale;
        }
    }
    return {p, StateVector(s.num_qubits(), std::move(amps))};
}

/// Samples an index from a probability vector (Born rule).
inline std::size_t sample_index(const std::vector<double>& probs, RandomStream& rng) {
    const double u = rng.next_unit();
    double acc = 0.0;
    std::size_t last_supported = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        last_supported = i;
        acc += probs[i];
        if (u < acc) {
            return i;
        }
    }
    if (last_supported == probs.size()) {
        throw consistency_error("sample_index: no outcome has positive probability");
    }
    return last_supported;
}

/// Projective measurement of `qubits` in `basis`, sampled by the Born rule.
/// Returns the outcome record and the collapsed, renormalized state of the
/// full register. Basis qubit t corresponds to register position qubits[t].
inline std::pair<MeasurementRecord, StateVector> measure(const StateVector& s,
                                                         const std::vector<std::size_t>& qubits,
                                                         const OrthonormalBasis& basis,
                                                         RandomStream& rng) {
    const auto probs = outcome_distribution(s, qubits, basis);
    const std::size_t k = sample_index(probs, rng);
    auto [p, post] = apply_outcome(s, qubits, basis, k);
    MeasurementRecord rec{basis.name, k, basis.labels[k], p, qubits};
    return {std::move(rec), std::move(post)};
}

}  // namespace dsqc::qcore
