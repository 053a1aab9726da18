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
#include <numbers>
#include <string>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/statevector.hpp"

namespace dsqc::qcore {

/// Indexed family of 2^num_qubits mutually orthonormal states on a
/// num_qubits-qubit register, with a human-readable label per element.
struct OrthonormalBasis {
    std::string name;
    std::size_t num_qubits = 0;
    std::vector<StateVector> elements;
    std::vector<std::string> labels;

    std::size_t size() const { return elements.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) {
                return i;
            }
        }
        throw lookup_error("basis '" + name + "' has no element labeled '" + label + "'");
    }

    /// Full Gram-matrix check: <e_i|e_j> = delta_ij and the family spans the
    /// whole space (element count = 2^num_qubits).
    bool is_orthonormal(double tol = kTol) const {
        if (elements.size() != (std::size_t{1} << num_qubits)) {
            return false;
        }
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (elements[i].num_qubits() != num_qubits) {
                return false;
            }
            for (std::size_t j = i; j < elements.size(); ++j) {
                const Complex g = inner_product(elements[i], elements[j]);
                const Complex want = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                if (std::abs(g - want) > tol) {
                    return false;
                }
            }
        }
        return true;
    }
};

inline std::string bitstring(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1u) {
            s[i] = '1';
        }
    }
    return s;
}

/// Computational basis {|00..0>, ..., |11..1>}, labeled by bitstring.
inline OrthonormalBasis computational_basis(std::size_t k) {
    if (k < 1) {
        throw contract_error("computational_basis: k must be >= 1");
    }
    OrthonormalBasis b;
    b.name = "computational(" + std::to_string(k) + ")";
    b.num_qubits = k;
    for (std::size_t v = 0; v < (std::size_t{1} << k); ++v) {
        b.elements.push_back(StateVector::basis_state(k, v));
        b.labels.push_back(bitstring(v, k));
    }
    return b;
}

/// Bell basis {psi+, psi-, phi+, phi-} with psi± = (|00> ± |11>)/sqrt(2) and
/// phi± = (|01> ± |10>)/sqrt(2).
inline OrthonormalBasis bell_basis() {
    const double r = 1.0 / std::numbers::sqrt2;
    OrthonormalBasis b;
    b.name = "bell";
    b.num_qubits = 2;
    b.elements = {
        StateVector(2, {r, 0.0, 0.0, r}),
        StateVector(2, {r, 0.0, 0.0, -r}),
        StateVector(2, {0.0, r, r, 0.0}),
        StateVector(2, {0.0, r, -r, 0.0}),
    };
    b.labels = {"psi+", "psi-", "phi+", "phi-"};
    return b;
}

/// k-qubit cat basis: elements (|u> ± |u^c>)/sqrt(2) where u runs over the
/// 2^{k-1} k-bit strings with leading bit 0 and u^c is the bitwise complement.
/// Element index = 2*int(u without its leading bit) + (0 for +, 1 for -), so
/// cat_basis(2) equals the Bell basis element-for-element up to relabeling.
inline OrthonormalBasis cat_basis(std::size_t k) {
    if (k < 1) {
        throw contract_error("cat_basis: k must be >= 1");
    }
    if (k > kMaxQubits) {
        throw contract_error("cat_basis: register cap exceeded");
    }
    const double r = 1.0 / std::numbers::sqrt2;
    const std::size_t dim = std::size_t{1} << k;
    OrthonormalBasis b;
    b.name = "cat(" + std::to_string(k) + ")";
    b.num_qubits = k;
    for (std::size_t u = 0; u < dim / 2; ++u) {
        const std::size_t uc = ~u & (dim - 1);
        for (int sign : {+1, -1}) {
            std::vector<Complex> amps(dim, Complex{0.0, 0.0});
            amps[u] = r;
            amps[uc] = sign * r;
            b.elements.emplace_back(k, std::move(amps));
            b.labels.push_back(std::string("cat(") + (sign > 0 ? '+' : '-') +
                               ",u=" + bitstring(u, k) + ")");
        }
    }
    return b;
}

/// Product basis of |+> / |-> factors, labeled by sign string (e.g. "+-").
inline OrthonormalBasis hadamard_basis(std::size_t k) {
    if (k < 1) {
        throw contract_error("hadamard_basis: k must be >= 1");
    }
    const double r = 1.0 / std::numbers::sqrt2;
    const StateVector plus(1, {r, r});
    const StateVector minus(1, {r, -r});
    OrthonormalBasis b;
    b.name = "hadamard(" + std::to_string(k) + ")";
    b.num_qubits = k;
    for (std::size_t v = 0; v < (std::size_t{1} << k); ++v) {
        StateVector e = ((v >> (k - 1)) & 1u) ? minus : plus;
        std::string label(1, ((v >> (k - 1)) & 1u) ? '-' : '+');
        for (std::size_t i = 1; i < k; ++i) {
            const bool neg = (v >> (k - 1 - i)) & 1u;
            e = tensor(e, neg ? minus : plus);
            label.push_back(neg ? '-' : '+');
        }
        b.elements.push_back(std::move(e));
        b.labels.push_back(std::move(label));
    }
    return b;
}

/// True when `v` has exactly two nonzero computational components, of equal
/// magnitude 1/sqrt(2), on complementary bitstrings (the cat-state shape).
inline bool is_cat_state(const StateVector& v, double tol = kTol) {
    const std::size_t dim = v.dim();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < dim; ++i) {
        if (std::abs(v.amplitude(i)) > tol) {
            support.push_back(i);
        }
    }
    if (support.size() != 2 || support[0] != (~support[1] & (dim - 1))) {
        return false;
    }
    const double r = 1.0 / std::numbers::sqrt2;
    return std::abs(std::abs(v.amplitude(support[0])) - r) <= tol &&
           std::abs(std::abs(v.amplitude(support[1])) - r) <= tol;
}

}  // namespace dsqc::qcore
