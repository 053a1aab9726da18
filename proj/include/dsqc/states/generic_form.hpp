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

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/basis.hpp"
#include "dsqc/qcore/statevector.hpp"

namespace dsqc::states {

using qcore::Complex;
using qcore::OrthonormalBasis;
using qcore::StateVector;

/// One term of the f-side selection: a basis element index and a +/-1 phase.
struct FTerm {
    std::size_t index = 0;
    int sign = +1;

    bool operator==(const FTerm&) const = default;
};

/// Shape of a carrier state (1/sqrt(2^n)) * sum_i |e_i>|f_i>: an n-bit message
/// width, 2^n selected elements of an m-qubit maximally-entangled (cat) basis
/// and 2^n selected elements of an l-qubit basis with optional signs.
struct GenericFormSpec {
    std::size_t m = 2;
    std::size_t l = 1;
    std::size_t n = 1;
    std::vector<std::size_t> e_selection;
    std::vector<FTerm> f_selection;

    std::size_t message_space() const { return std::size_t{1} << n; }
    std::size_t total_qubits() const { return m + l; }

    bool operator==(const GenericFormSpec&) const = default;
};

inline void validate_spec(const GenericFormSpec& spec,
                          const OrthonormalBasis& e_basis,
                          const OrthonormalBasis& f_basis) {
    if (spec.n < 1 || spec.m < 2 || spec.m < spec.n || spec.l < spec.n) {
        throw spec_error("generic form requires m >= 2, m >= n, l >= n >= 1");
    }
    if (e_basis.num_qubits != spec.m) {
        throw spec_error("e basis is not on m qubits");
    }
    if (f_basis.num_qubits != spec.l) {
        throw spec_error("f basis is not on l qubits");
    }
    const std::size_t count = spec.message_space();
    if (spec.e_selection.size() != count || spec.f_selection.size() != count) {
        throw spec_error("selections must contain exactly 2^n elements");
    }
    std::vector<bool> seen_e(e_basis.size(), false);
    std::vector<bool> seen_f(f_basis.size(), false);
    for (std::size_t idx : spec.e_selection) {
        if (idx >= e_basis.size() || seen_e[idx]) {
            throw spec_error("e selection has an invalid or duplicate index");
        }
        seen_e[idx] = true;
        if (!qcore::is_cat_state(e_basis.elements[idx])) {
            throw spec_error("selected e element is not a cat state; "
                             "non-cat maximally entangled bases are unsupported");
        }
    }
    for (const FTerm& t : spec.f_selection) {
        if (t.index >= f_basis.size() || seen_f[t.index]) {
            throw spec_error("f selection has an invalid or duplicate index");
        }
        if (t.sign != 1 && t.sign != -1) {
            throw spec_error("f phases are restricted to +/-1");
        }
        seen_f[t.index] = true;
    }
    if (!e_basis.is_orthonormal() || !f_basis.is_orthonormal()) {
        throw spec_error("selection bases must be orthonormal");
    }
}

/// (1/sqrt(2^n)) * sum_i sign_i |e_i>|f_i> with the e qubits in register
/// positions 0..m-1.
inline StateVector build_generic(const GenericFormSpec& spec,
                                 const OrthonormalBasis& e_basis,
                                 const OrthonormalBasis& f_basis) {
    validate_spec(spec, e_basis, f_basis);
    const std::size_t dim = std::size_t{1} << spec.total_qubits();
    const double coeff = std::pow(2.0, -0.5 * static_cast<double>(spec.n));
    std::vector<Complex> amps(dim, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < spec.message_space(); ++i) {
        const StateVector& e = e_basis.elements[spec.e_selection[i]];
        const StateVector& f = f_basis.elements[spec.f_selection[i].index];
        const double sign = static_cast<double>(spec.f_selection[i].sign);
        for (std::size_t x = 0; x < e.dim(); ++x) {
            const Complex ex = e.amplitude(x);
            if (ex == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t y = 0; y < f.dim(); ++y) {
                amps[(x << spec.l) | y] += coeff * sign * ex * f.amplitude(y);
            }
        }
    }
    return StateVector(spec.total_qubits(), std::move(amps));
}

/// Outcome of deciding whether a state has the generic carrier form for the
/// given (m, l, n). On acceptance the recovered bases are reported: each e is
/// a cat-basis element and each f absorbs the per-term phase.
struct DecompositionReport {
    bool accepted = false;
    std::string reason;
    std::vector<double> schmidt_coefficients;
    std::vector<std::size_t> recovered_e_indices;
    std::vector<std::string> recovered_e_labels;
    std::vector<StateVector> recovered_e;
    std::vector<StateVector> recovered_f;
};

/// SVD noise exceeds the raw amplitude tolerance, so Schmidt checks get a
/// looser bound.
inline constexpr double kSchmidtTol = 1e-9;

/// Decides whether s = (1/sqrt(2^n)) * sum |e_i>|f_i> across the m|l cut with
/// orthonormal cat-state e's and orthonormal f's. Works on the Schmidt
/// spectrum plus the left-subspace projector expressed in the cat basis; the
/// projector route stays exact even though the 2^n equal Schmidt coefficients
/// make the left singular vectors themselves non-unique.
inline DecompositionReport verify_generic_form(const StateVector& s,
                                               std::size_t m,
                                               std::size_t l,
                                               std::size_t n) {
    if (s.num_qubits() != m + l) {
        throw contract_error("verify_generic_form: state is not on m+l qubits");
    }
    DecompositionReport report;
    if (n < 1 || m < 2 || m < n || l < n) {
        report.reason = "dimension conditions violated (need m >= 2, m >= n, l >= n >= 1)";
        return report;
    }

    const std::size_t rows = std::size_t{1} << m;
    const std::size_t cols = std::size_t{1} << l;
    Eigen::MatrixXcd M(rows, cols);
    for (std::size_t x = 0; x < rows; ++x) {
        for (std::size_t y = 0; y < cols; ++y) {
            M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                s.amplitude((x << l) | y);
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& sigma = svd.singularValues();
    report.schmidt_coefficients.assign(sigma.data(), sigma.data() + sigma.size());

    const std::size_t want = std::size_t{1} << n;
    const double target = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::size_t rank = 0;
    std::size_t at_target = 0;
    for (double v : report.schmidt_coefficients) {
        if (v > kSchmidtTol) {
            ++rank;
        }
        if (std::abs(v - target) <= kSchmidtTol) {
            ++at_target;
        }
    }
    if (rank == 1 && want > 1) {
        report.reason = "single Schmidt coefficient: state is a product across the m|l cut";
        return report;
    }
    if (rank != want) {
        report.reason = "Schmidt rank " + std::to_string(rank) + " differs from 2^n = " +
                        std::to_string(want);
        return report;
    }
    if (at_target != want) {
        report.reason = "Schmidt coefficients unequal: expected " + std::to_string(want) +
                        " values of 1/sqrt(2^n)";
        return report;
    }

    // Projector onto the left Schmidt subspace, expressed in the cat basis.
    // The subspace has an orthonormal cat-state basis iff this matrix is
    // diagonal with 0/1 entries.
    const OrthonormalBasis cats = qcore::cat_basis(m);
    Eigen::MatrixXcd C(rows, rows);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t x = 0; x < rows; ++x) {
            C(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j)) =
                cats.elements[j].amplitude(x);
        }
    }
    const Eigen::MatrixXcd P =
        static_cast<double>(want) * (M * M.adjoint());
    const Eigen::MatrixXcd D = C.adjoint() * P * C;

    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rows; ++j) {
            const double mag = std::abs(D(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j)));
            if (i == j) {
                if (std::abs(mag - 1.0) <= kSchmidtTol) {
                    selected.push_back(i);
                } else if (mag > kSchmidtTol) {
                    report.reason = "left Schmidt subspace admits no cat-state basis";
                    return report;
                }
            } else if (mag > kSchmidtTol) {
                report.reason = "left Schmidt subspace admits no cat-state basis";
                return report;
            }
        }
    }
    if (selected.size() != want) {
        report.reason = "left Schmidt subspace admits no cat-state basis";
        return report;
    }

    // Recover f_i = sqrt(2^n) <e_i| M and confirm the decomposition.
    const double scale = std::sqrt(static_cast<double>(want));
    std::vector<StateVector> fs;
    for (std::size_t idx : selected) {
        const StateVector& e = cats.elements[idx];
        std::vector<Complex> f(cols, Complex{0.0, 0.0});
        for (std::size_t y = 0; y < cols; ++y) {
            for (std::size_t x = 0; x < rows; ++x) {
                f[y] += scale * std::conj(e.amplitude(x)) *
                        M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
            }
        }
        fs.push_back(StateVector::normalized(l, std::move(f)));
    }
    for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = i; j < fs.size(); ++j) {
            const Complex g = qcore::inner_product(fs[i], fs[j]);
            const Complex want_g = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(g - want_g) > kSchmidtTol) {
                report.reason = "recovered f family is not orthonormal";
                return report;
            }
        }
    }

    report.accepted = true;
    report.recovered_e_indices = selected;
    for (std::size_t idx : selected) {
        report.recovered_e_labels.push_back(cats.labels[idx]);
        report.recovered_e.push_back(cats.elements[idx]);
    }
    report.recovered_f = std::move(fs);
    return report;
}

}  // namespace dsqc::states
