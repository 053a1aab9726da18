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

#include <string>
#include <utility>
#include <vector>

#include "dsqc/error.hpp"
#include "dsqc/qcore/basis.hpp"
#include "dsqc/states/generic_form.hpp"

namespace dsqc::states {

/// A carrier state together with the ingredients that generate it.
struct NamedState {
    std::string name;
    GenericFormSpec spec;
    qcore::OrthonormalBasis e_basis;
    qcore::OrthonormalBasis f_basis;
    StateVector vector;
};

inline NamedState make_state(std::string name,
                             GenericFormSpec spec,
                             qcore::OrthonormalBasis e_basis,
                             qcore::OrthonormalBasis f_basis) {
    StateVector v = build_generic(spec, e_basis, f_basis);
    return NamedState{std::move(name), std::move(spec), std::move(e_basis),
                      std::move(f_basis), std::move(v)};
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "cluster", "cluster-swapped", "cat4",          "ghz",
        "ghz-like", "brown-swapped",  "chi",           "omega",
    };
    return names;
}

/// Catalog of well-known 4- and 5-qubit carrier states. The chi entry is
/// stored through its cat-basis decomposition chi = (1/2)(|psi+>|00> -
/// |phi->|01> + |phi+>|10> - |psi->|11>), which expands to the usual
/// computational-basis form.
inline NamedState named_state(const std::string& name) {
    using qcore::bell_basis;
    using qcore::cat_basis;
    using qcore::computational_basis;
    using qcore::hadamard_basis;

    if (name == "cluster") {
        return make_state(name,
                          GenericFormSpec{2, 2, 1, {0, 1}, {{0, +1}, {3, +1}}},
                          bell_basis(), computational_basis(2));
    }
    if (name == "cluster-swapped") {
        return make_state(
            name,
            GenericFormSpec{2, 2, 2, {0, 1, 2, 3}, {{1, +1}, {0, +1}, {2, +1}, {3, +1}}},
            bell_basis(), bell_basis());
    }
    if (name == "cat4") {
        return make_state(name, GenericFormSpec{2, 2, 1, {0, 1}, {{0, +1}, {1, +1}}},
                          bell_basis(), bell_basis());
    }
    if (name == "ghz") {
        return make_state(name, GenericFormSpec{2, 1, 1, {0, 1}, {{0, +1}, {1, +1}}},
                          bell_basis(), hadamard_basis(1));
    }
    if (name == "ghz-like") {
        return make_state(name, GenericFormSpec{2, 1, 1, {0, 1}, {{0, +1}, {1, +1}}},
                          bell_basis(), computational_basis(1));
    }
    if (name == "brown-swapped") {
        return make_state(
            name,
            GenericFormSpec{3, 2, 2, {4, 7, 2, 1}, {{0, +1}, {1, -1}, {2, +1}, {3, -1}}},
            cat_basis(3), computational_basis(2));
    }
    if (name == "chi") {
        return make_state(
            name,
            GenericFormSpec{2, 2, 2, {0, 3, 2, 1}, {{0, +1}, {1, -1}, {2, +1}, {3, -1}}},
            bell_basis(), computational_basis(2));
    }
    if (name == "omega") {
        return make_state(
            name,
            GenericFormSpec{2, 2, 2, {0, 1, 2, 3}, {{1, +1}, {0, +1}, {2, +1}, {3, -1}}},
            bell_basis(), bell_basis());
    }
    throw lookup_error("unknown catalog state '" + name + "'");
}

}  // namespace dsqc::states
