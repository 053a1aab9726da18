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

#include <cstddef>
#include <string>

#include "dsqc/error.hpp"

namespace dsqc::analysis {

/// Which qubits the efficiency denominator counts.
enum class QubitCounting { total_qubits, transmitted_qubits };

inline std::string to_string(QubitCounting c) {
    return c == QubitCounting::total_qubits ? "total_qubits" : "transmitted_qubits";
}

/// eta = c / (q + b): message bits per qubit-plus-decoding-bit consumed.
struct EfficiencyReport {
    std::size_t message_bits = 0;    // c
    std::size_t qubits_counted = 0;  // q
    std::size_t classical_bits = 0;  // b
    double eta = 0.0;
    QubitCounting convention = QubitCounting::total_qubits;
};

/// Per-copy accounting for an (m, l, n) family. Under total_qubits the m+l
/// carrier qubits, l decoy qubits and m swap qubits give q = 2m+2l; under
/// transmitted_qubits only the l carriers and l decoys that travel count, so
/// q = 2l. Decoding needs Alice's two announcements, b = 2m; eavesdropping-
/// check communication is not counted.
inline EfficiencyReport efficiency(std::size_t m,
                                   std::size_t l,
                                   std::size_t n,
                                   QubitCounting convention) {
    if (n < 1 || m < 2 || m < n || l < n) {
        throw contract_error("efficiency: invalid dimensions (need m >= 2, m >= n, l >= n >= 1)");
    }
    EfficiencyReport report;
    report.convention = convention;
    report.message_bits = n;
    report.classical_bits = 2 * m;
    report.qubits_counted =
        convention == QubitCounting::total_qubits ? 2 * m + 2 * l : 2 * l;
    report.eta = static_cast<double>(report.message_bits) /
                 static_cast<double>(report.qubits_counted + report.classical_bits);
    return report;
}

}  // namespace dsqc::analysis
