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
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/protocol/decode_table.hpp"
#include "dsqc/qcore/measurement.hpp"
#include "dsqc/states/generic_form.hpp"

namespace dsqc::analysis {

using qcore::Complex;
using qcore::OrthonormalBasis;
using qcore::StateVector;
using states::GenericFormSpec;

/// Maximum pairwise total-variation distance, across encoded messages, of the
/// exact joint announcement distribution. Zero certifies that the public
/// announcements alone carry no information about the message.
///
/// Selections are not re-validated for orthonormality here, so deliberately
/// broken families (the negative controls) can be audited; the carrier state
/// is renormalized after assembly.
inline double leakage_audit(const GenericFormSpec& spec,
                            const OrthonormalBasis& e_basis,
                            const OrthonormalBasis& f_basis) {
    const std::size_t count = spec.message_space();
    if (spec.e_selection.size() != count || spec.f_selection.size() != count) {
        throw contract_error("leakage_audit: selections must contain 2^n entries");
    }

    const std::size_t dim = std::size_t{1} << spec.total_qubits();
    std::vector<Complex> raw(dim, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < count; ++i) {
        const StateVector& e = e_basis.elements.at(spec.e_selection[i]);
        const StateVector& f = f_basis.elements.at(spec.f_selection[i].index);
        const double sign = static_cast<double>(spec.f_selection[i].sign);
        for (std::size_t x = 0; x < e.dim(); ++x) {
            for (std::size_t y = 0; y < f.dim(); ++y) {
                raw[(x << spec.l) | y] += sign * e.amplitude(x) * f.amplitude(y);
            }
        }
    }
    const StateVector psi = StateVector::normalized(spec.total_qubits(), std::move(raw));

    const protocol::SwapLayout lay = protocol::swap_layout(spec.m);
    std::vector<std::vector<double>> flattened;
    for (std::size_t j = 0; j < count; ++j) {
        const StateVector combined =
            qcore::tensor(e_basis.elements.at(spec.e_selection[j]), psi);
        const auto joint = protocol::announcement_distribution(combined, lay);
        std::vector<double> flat;
        for (const auto& row : joint) {
            flat.insert(flat.end(), row.begin(), row.end());
        }
        flattened.push_back(std::move(flat));
    }

    double worst = 0.0;
    for (std::size_t a = 0; a < flattened.size(); ++a) {
        for (std::size_t b = a + 1; b < flattened.size(); ++b) {
            double tv = 0.0;
            for (std::size_t k = 0; k < flattened[a].size(); ++k) {
                tv += std::abs(flattened[a][k] - flattened[b][k]);
            }
            worst = std::max(worst, 0.5 * tv);
        }
    }
    return worst;
}

}  // namespace dsqc::analysis
