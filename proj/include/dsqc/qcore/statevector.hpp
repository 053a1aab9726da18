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
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/rng.hpp"

namespace dsqc::qcore {

using Complex = std::complex<double>;

/// Dense amplitudes stay cheap up to this register width; every state used by
/// the protocol needs at most 10 qubits.
inline constexpr std::size_t kMaxQubits = 16;

/// Tolerance for exact-algebra comparisons in double precision.
inline constexpr double kTol = 1e-12;

class PermutationMap;

/// Normalized pure state of a `num_qubits`-qubit register.
///
/// Register position 0 is the leftmost ket symbol and the amplitude index is
/// the big-endian integer of the bitstring: |q0 q1 ... q_{k-1}> sits at index
/// q0*2^{k-1} + q1*2^{k-2} + ... + q_{k-1}. Instances are immutable after
/// construction and freely copyable.
class StateVector {
  public:
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        check_shape();
        if (std::abs(norm_sq() - 1.0) > 32 * kTol) {
            throw contract_error("StateVector: amplitudes are not normalized");
        }
    }

    /// Computational basis state |index> on `num_qubits` qubits.
    static StateVector basis_state(std::size_t num_qubits, std::size_t index) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw contract_error("StateVector: qubit count out of range");
        }
        std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
        if (index >= amps.size()) {
            throw contract_error("StateVector: basis index out of range");
        }
        amps[index] = 1.0;
        return StateVector(num_qubits, std::move(amps), Unchecked{});
    }

    /// Builds a state from raw amplitudes, rescaling to unit norm.
    static StateVector normalized(std::size_t num_qubits, std::vector<Complex> amplitudes) {
        double n = 0.0;
        for (const auto& a : amplitudes) {
            n += std::norm(a);
        }
        if (n <= 0.0) {
            throw contract_error("StateVector::normalized: zero vector");
        }
        const double scale = 1.0 / std::sqrt(n);
        for (auto& a : amplitudes) {
            a *= scale;
        }
        StateVector s(num_qubits, std::move(amplitudes), Unchecked{});
        s.check_shape();
        return s;
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t index) const { return amps_.at(index); }

    double norm_sq() const {
        double n = 0.0;
        for (const auto& a : amps_) {
            n += std::norm(a);
        }
        return n;
    }

    /// Value of qubit `position` in basis index `index`.
    bool bit(std::size_t index, std::size_t position) const {
        return (index >> (num_qubits_ - 1 - position)) & 1u;
    }

  private:
    struct Unchecked {};
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes, Unchecked)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {}

    void check_shape() const {
        if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
            throw contract_error("StateVector: qubit count out of range");
        }
        if (amps_.size() != (std::size_t{1} << num_qubits_)) {
            throw contract_error("StateVector: amplitude count is not 2^num_qubits");
        }
    }

    std::size_t num_qubits_;
    std::vector<Complex> amps_;

    friend StateVector tensor(const StateVector&, const StateVector&);
    friend class PermutationMap;
    friend StateVector permute_qubits(const StateVector&, const PermutationMap&);
    friend StateVector apply_cnot(const StateVector&, std::size_t, std::size_t);
};

/// <a|b>. Conjugate-linear in the first argument.
inline Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw contract_error("inner_product: qubit counts differ");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return acc;
}

/// a (x) b with a's qubits in the lower (leftmost) register positions.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    const std::size_t n = a.num_qubits() + b.num_qubits();
    if (n > kMaxQubits) {
        throw contract_error("tensor: register cap exceeded");
    }
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t x = 0; x < a.dim(); ++x) {
        const Complex ax = a.amplitude(x);
        for (std::size_t y = 0; y < b.dim(); ++y) {
            amps[(x << b.num_qubits()) | y] = ax * b.amplitude(y);
        }
    }
    return StateVector(n, std::move(amps), StateVector::Unchecked{});
}

/// Bijection on register positions: input position i moves to position
/// `mapping[i]` of the output.
class PermutationMap {
  public:
    explicit PermutationMap(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
        std::vector<bool> seen(mapping_.size(), false);
        for (std::size_t t : mapping_) {
            if (t >= mapping_.size() || seen[t]) {
                throw contract_error("PermutationMap: mapping is not a bijection");
            }
            seen[t] = true;
        }
    }

    static PermutationMap identity(std::size_t size) {
        std::vector<std::size_t> m(size);
        std::iota(m.begin(), m.end(), std::size_t{0});
        return PermutationMap(std::move(m));
    }

    std::size_t size() const { return mapping_.size(); }
    std::size_t operator()(std::size_t i) const { return mapping_.at(i); }
    const std::vector<std::size_t>& mapping() const { return mapping_; }

    PermutationMap inverse() const {
        std::vector<std::size_t> inv(mapping_.size());
        for (std::size_t i = 0; i < mapping_.size(); ++i) {
            inv[mapping_[i]] = i;
        }
        return PermutationMap(std::move(inv));
    }

    /// Reorders an arbitrary sequence: out[mapping[i]] = seq[i].
    template <typename T>
    std::vector<T> apply(const std::vector<T>& seq) const {
        if (seq.size() != mapping_.size()) {
            throw contract_error("PermutationMap::apply: size mismatch");
        }
        std::vector<T> out(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out[mapping_[i]] = seq[i];
        }
        return out;
    }

    bool operator==(const PermutationMap& other) const = default;

  private:
    std::vector<std::size_t> mapping_;
};

/// Moves qubit i of `s` to register position perm(i).
inline StateVector permute_qubits(const StateVector& s, const PermutationMap& perm) {
    if (perm.size() != s.num_qubits()) {
        throw contract_error("permute_qubits: permutation size != qubit count");
    }
    const std::size_t n = s.num_qubits();
    std::vector<Complex> amps(s.dim());
    for (std::size_t x = 0; x < s.dim(); ++x) {
        std::size_t y = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if ((x >> (n - 1 - i)) & 1u) {
                y |= std::size_t{1} << (n - 1 - perm(i));
            }
        }
        amps[y] = s.amplitude(x);
    }
    return StateVector(n, std::move(amps), StateVector::Unchecked{});
}

/// CNOT with register position `control` as control and `target` as target.
inline StateVector apply_cnot(const StateVector& s, std::size_t control, std::size_t target) {
    const std::size_t n = s.num_qubits();
    if (control >= n || target >= n || control == target) {
        throw contract_error("apply_cnot: bad qubit positions");
    }
    const std::size_t cmask = std::size_t{1} << (n - 1 - control);
    const std::size_t tmask = std::size_t{1} << (n - 1 - target);
    std::vector<Complex> amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
    return StateVector(n, std::move(amps), StateVector::Unchecked{});
}

/// Uniformly random permutation (Fisher-Yates).
inline PermutationMap random_permutation(std::size_t size, RandomStream& rng) {
    std::vector<std::size_t> m(size);
    std::iota(m.begin(), m.end(), std::size_t{0});
    for (std::size_t i = size; i > 1; --i) {
        std::swap(m[i - 1], m[rng.next_below(i)]);
    }
    return PermutationMap(std::move(m));
}

/// Scales `s` by the global phase that makes its first nonzero amplitude real
/// and positive. States are physically equal iff their canonical forms match.
inline StateVector canonical_phase(const StateVector& s, double tol = kTol) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Complex a = s.amplitude(i);
        if (std::abs(a) > tol) {
            const Complex phase = std::conj(a) / std::abs(a);
            std::vector<Complex> amps = s.amplitudes();
            for (auto& v : amps) {
                v *= phase;
            }
            return StateVector(s.num_qubits(), std::move(amps));
        }
    }
    throw consistency_error("canonical_phase: zero state");
}

inline double max_abs_difference(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw contract_error("max_abs_difference: qubit counts differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a.amplitude(i) - b.amplitude(i)));
    }
    return worst;
}

inline bool approx_equal(const StateVector& a, const StateVector& b, double tol = kTol) {
    return a.num_qubits() == b.num_qubits() && max_abs_difference(a, b) <= tol;
}

inline bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kTol) {
    return a.num_qubits() == b.num_qubits() &&
           max_abs_difference(canonical_phase(a, tol), canonical_phase(b, tol)) <= tol;
}

}  // namespace dsqc::qcore
