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

#include <CLI11.hpp>

#include "dsqc/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal-state DSQC simulator: entanglement-swapping sessions, "
                 "attack sweeps, decode tables, and efficiency reports"};
    app.require_subcommand(1);

    dsqc::cli::RunSpec spec;

    auto add_common = [&spec](CLI::App* sub) {
        sub->add_option("--state", spec.state, "Catalog state name")->capture_default_str();
        sub->add_option("--spec-file", spec.spec_file,
                        "JSON generic-form spec document (overrides --state)");
        sub->add_option("--seed", spec.seed, "Deterministic seed")->capture_default_str();
        sub->add_option("--out", spec.out, "Output file (defaults to stdout)");
        sub->add_option("--format", spec.format, "Output format: json or log")
            ->capture_default_str();
    };
    auto add_session = [&spec](CLI::App* sub) {
        sub->add_option("--copies", spec.copies, "Carrier copies N (default: fit the message)");
        sub->add_option("--decoy-pairs", spec.decoy_pairs,
                        "Decoy Bell pairs (default: ceil(N*l/2))");
        sub->add_option("--threshold", spec.threshold, "Abort threshold on decoy error rate")
            ->capture_default_str();
        sub->add_option("--attack", spec.attack,
                        "none | measure-resend-computational | measure-resend-bell | "
                        "cnot-clone | capture-replace")
            ->capture_default_str();
    };

    auto* run = app.add_subcommand("run", "Run one protocol session");
    add_common(run);
    add_session(run);
    run->add_option("--message", spec.message, "Message bits (binary or 0x-prefixed hex)");

    auto* sweep = app.add_subcommand("attack-sweep",
                                     "Exact and Monte-Carlo detection probability per attack");
    add_common(sweep);
    add_session(sweep);
    sweep->add_option("--trials", spec.trials, "Monte-Carlo trials")->capture_default_str();

    auto* table = app.add_subcommand("table", "Dump the decode table for a state family");
    add_common(table);

    auto* verify = app.add_subcommand("verify", "Check a state against the generic carrier form");
    add_common(verify);

    auto* efficiency = app.add_subcommand("efficiency", "Qubit-efficiency report for a state");
    add_common(efficiency);

    auto* qkd = app.add_subcommand("qkd", "Derive a shared key from a random message");
    add_common(qkd);
    add_session(qkd);
    qkd->add_option("--key-bits", spec.key_bits, "Key length in bits")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? dsqc::cli::kExitOk : dsqc::cli::kExitUsage;
    }

    spec.subcommand = app.get_subcommands().front()->get_name();
    return dsqc::cli::run_command(spec);
}
