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

#include <stdexcept>
#include <string>

namespace dsqc {

/// Caller violated a documented precondition (size mismatch, index out of
/// range, register cap exceeded, ...).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A generic-form specification violates its dimension conditions or selects
/// duplicate basis elements.
struct spec_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Unknown name: catalog state, basis label, attack strategy, ...
struct lookup_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two different messages map to the same decode-table triple; the state
/// family cannot carry deterministic communication.
struct ambiguity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A measured outcome triple is absent from the decode table, which signals
/// tampering or a spec mismatch between the parties.
struct corruption_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed (probabilities do not sum to one, a complete
/// basis produced no outcome, ...).
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace dsqc
