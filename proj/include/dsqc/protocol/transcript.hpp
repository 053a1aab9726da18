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
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dsqc/error.hpp"
#include "dsqc/qcore/statevector.hpp"

namespace dsqc::protocol {

using qcore::PermutationMap;

struct QubitTransfer {
    std::size_t count = 0;
    bool operator==(const QubitTransfer&) const = default;
};

struct Ack {
    bool operator==(const Ack&) const = default;
};

struct PermutationDisclosure {
    PermutationMap permutation;
    std::vector<std::pair<std::size_t, std::size_t>> decoy_pairs;
    bool operator==(const PermutationDisclosure&) const = default;
};

struct DecoyCheckResult {
    double error_rate = 0.0;
    bool pass = true;
    std::size_t pairs_checked = 0;
    bool operator==(const DecoyCheckResult&) const = default;
};

struct EncodedBlockIndex {
    std::size_t copy = 0;
    bool operator==(const EncodedBlockIndex&) const = default;
};

struct SwapAnnouncement {
    std::size_t copy = 0;
    std::string first_outcome;
    std::string second_outcome;
    bool operator==(const SwapAnnouncement&) const = default;
};

struct DecodeResult {
    std::size_t copy = 0;
    std::string bits;
    bool operator==(const DecodeResult&) const = default;
};

using Event = std::variant<QubitTransfer, Ack, PermutationDisclosure, DecoyCheckResult,
                           EncodedBlockIndex, SwapAnnouncement, DecodeResult>;

/// Ordered record of every protocol event of one session, in protocol order.
struct Transcript {
    std::vector<Event> events;

    bool aborted() const {
        for (const Event& e : events) {
            if (const auto* check = std::get_if<DecoyCheckResult>(&e); check && !check->pass) {
                return true;
            }
        }
        return false;
    }

    double error_rate() const {
        for (const Event& e : events) {
            if (const auto* check = std::get_if<DecoyCheckResult>(&e)) {
                return check->error_rate;
            }
        }
        return 0.0;
    }

    /// Concatenation of all decoded blocks, in copy order.
    std::string decoded_message() const {
        std::string bits;
        for (const Event& e : events) {
            if (const auto* d = std::get_if<DecodeResult>(&e)) {
                bits += d->bits;
            }
        }
        return bits;
    }

    bool operator==(const Transcript&) const = default;
};

inline nlohmann::json event_to_json(const Event& event) {
    using nlohmann::json;
    return std::visit(
        [](const auto& e) -> json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, QubitTransfer>) {
                return json{{"type", "qubit_transfer"}, {"count", e.count}};
            } else if constexpr (std::is_same_v<T, Ack>) {
                return json{{"type", "ack"}};
            } else if constexpr (std::is_same_v<T, PermutationDisclosure>) {
                json pairs = json::array();
                for (const auto& [a, b] : e.decoy_pairs) {
                    pairs.push_back(json::array({a, b}));
                }
                return json{{"type", "permutation_disclosure"},
                            {"permutation", e.permutation.mapping()},
                            {"decoy_pairs", pairs}};
            } else if constexpr (std::is_same_v<T, DecoyCheckResult>) {
                return json{{"type", "decoy_check"},
                            {"error_rate", e.error_rate},
                            {"pass", e.pass},
                            {"pairs_checked", e.pairs_checked}};
            } else if constexpr (std::is_same_v<T, EncodedBlockIndex>) {
                return json{{"type", "encoded_block"}, {"copy", e.copy}};
            } else if constexpr (std::is_same_v<T, SwapAnnouncement>) {
                return json{{"type", "swap_announcement"},
                            {"copy", e.copy},
                            {"first_outcome", e.first_outcome},
                            {"second_outcome", e.second_outcome}};
            } else {
                return json{{"type", "decode_result"}, {"copy", e.copy}, {"bits", e.bits}};
            }
        },
        event);
}

inline Event event_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "qubit_transfer") {
        return QubitTransfer{j.at("count").get<std::size_t>()};
    }
    if (type == "ack") {
        return Ack{};
    }
    if (type == "permutation_disclosure") {
        PermutationMap perm(j.at("permutation").get<std::vector<std::size_t>>());
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& p : j.at("decoy_pairs")) {
            pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
        }
        return PermutationDisclosure{std::move(perm), std::move(pairs)};
    }
    if (type == "decoy_check") {
        return DecoyCheckResult{j.at("error_rate").get<double>(), j.at("pass").get<bool>(),
                                j.at("pairs_checked").get<std::size_t>()};
    }
    if (type == "encoded_block") {
        return EncodedBlockIndex{j.at("copy").get<std::size_t>()};
    }
    if (type == "swap_announcement") {
        return SwapAnnouncement{j.at("copy").get<std::size_t>(),
                                j.at("first_outcome").get<std::string>(),
                                j.at("second_outcome").get<std::string>()};
    }
    if (type == "decode_result") {
        return DecodeResult{j.at("copy").get<std::size_t>(), j.at("bits").get<std::string>()};
    }
    throw lookup_error("unknown transcript event type '" + type + "'");
}

inline nlohmann::json to_json(const Transcript& t) {
    nlohmann::json events = nlohmann::json::array();
    for (const Event& e : t.events) {
        events.push_back(event_to_json(e));
    }
    return nlohmann::json{{"events", std::move(events)}};
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
    Transcript t;
    for (const auto& e : j.at("events")) {
        t.events.push_back(event_from_json(e));
    }
    return t;
}

/// Line-delimited human-readable log, one event per line.
inline std::string to_log(const Transcript& t) {
    std::ostringstream out;
    for (const Event& event : t.events) {
        std::visit(
            [&out](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, QubitTransfer>) {
                    out << "TRANSFER qubits=" << e.count;
                } else if constexpr (std::is_same_v<T, Ack>) {
                    out << "ACK";
                } else if constexpr (std::is_same_v<T, PermutationDisclosure>) {
                    out << "DISCLOSE permutation=[";
                    for (std::size_t i = 0; i < e.permutation.size(); ++i) {
                        out << (i ? "," : "") << e.permutation(i);
                    }
                    out << "] decoy_pairs=[";
                    for (std::size_t i = 0; i < e.decoy_pairs.size(); ++i) {
                        out << (i ? "," : "") << "(" << e.decoy_pairs[i].first << ","
                            << e.decoy_pairs[i].second << ")";
                    }
                    out << "]";
                } else if constexpr (std::is_same_v<T, DecoyCheckResult>) {
                    out << "DECOY_CHECK error_rate=" << e.error_rate
                        << " pairs=" << e.pairs_checked << " result="
                        << (e.pass ? "pass" : "fail");
                } else if constexpr (std::is_same_v<T, EncodedBlockIndex>) {
                    out << "ENCODE copy=" << e.copy;
                } else if constexpr (std::is_same_v<T, SwapAnnouncement>) {
                    out << "ANNOUNCE copy=" << e.copy << " first=" << e.first_outcome
                        << " second=" << e.second_outcome;
                } else {
                    out << "DECODE copy=" << e.copy << " bits=" << e.bits;
                }
            },
            event);
        out << "\n";
    }
    return out.str();
}

}  // namespace dsqc::protocol
