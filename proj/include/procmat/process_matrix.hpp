// Copyright 2026 The procmat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROCMAT_PROCESS_MATRIX_HPP
#define PROCMAT_PROCESS_MATRIX_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "procmat/labeled_operator.hpp"
#include "procmat/process_function.hpp"

namespace procmat {

enum class WireRoleKind {
    PartyInput,
    PartyOutput,
    GlobalPast,
    GlobalFuture,
    TargetFuture,
};

struct WireRole {
    WireRoleKind kind = WireRoleKind::PartyInput;
    int party = 0;  // 1-based; 0 for non-party roles

    bool operator==(const WireRole &o) const {
        return kind == o.kind && party == o.party;
    }
};

std::string wire_role_to_string(const WireRole &role);
WireRole wire_role_from_string(const std::string &s);

/// A process matrix: a PSD operator on role-annotated wires. Rank-1 processes
/// (purifications) are kept in vector form and densified on demand; operators
/// beyond 12 wires refuse to densify.
class ProcessMatrix {
   public:
    ProcessMatrix() = default;
    ProcessMatrix(LabeledOperator op, std::map<std::string, WireRole> roles);
    ProcessMatrix(LabeledKet pure, std::map<std::string, WireRole> roles);

    bool is_pure() const {
        return pure_.has_value();
    }
    const LabeledKet &pure() const;
    const LabeledOperator &op() const;  // materializes a pure process

    const std::map<std::string, WireRole> &roles() const {
        return roles_;
    }
    const std::vector<SpaceLabel> &spaces() const;
    bool has_wire(const std::string &name) const;

    double trace() const;
    /// Product of the dims of all output-role wires (party outputs and the
    /// global past); a normalized process has trace equal to this.
    double expected_trace() const;

    std::vector<std::string> wires_of_kind(WireRoleKind kind) const;
    std::vector<int> party_indices() const;

   private:
    mutable std::optional<LabeledOperator> dense_;
    std::optional<LabeledKet> pure_;
    std::map<std::string, WireRole> roles_;
    void check_roles() const;
};

// Wire names used by the constructors below. Party arguments elsewhere in
// this API are 0-based; wire name suffixes are 1-based.
std::string party_input_wire(int party_suffix);   // "A_I^j", j 1-based
std::string party_output_wire(int party_suffix);  // "A_O^j"

/// Diagonal process matrix of a logically consistent process function:
/// sum_a |a><a| on the output wires (x) |w(a)><w(a)| on the input wires.
ProcessMatrix from_process_function(const BooleanProcessFunction &w);

/// Rank-1 reversible extension: every party gains a past wire P^j fed by an
/// XOR mask on its input and a future wire F^j carrying a copy of its output.
ProcessMatrix purify(const BooleanProcessFunction &w);

/// Past wires of the extension pinned to |0>, future wires of all parties but
/// `party` traced out; the surviving future wire is renamed F.
ProcessMatrix partial_purify(const BooleanProcessFunction &w, int party);

/// Quantum-controlled-order process obtained from partial_purify(w, party) by
/// rerouting the control party's slots: a fresh global past wire P feeds its
/// output slot and its input slot is pulled to a target future wire Ft.
/// Requires the transparent-control condition on `party`.
ProcessMatrix to_qcqc(const BooleanProcessFunction &w, int party);

/// The switch of two parties' classical communications with control in P/F:
/// control |0> routes a |0>-initialized target A then B, control |1> reverses
/// the order through bit-flipped channels; the final target wire is traced.
ProcessMatrix quantum_switch();

/// Maximally mixed operator with the switch's wires and roles; a valid
/// process useful as a noise reference.
ProcessMatrix white_noise_switch_process();

struct ValidationReport {
    bool hermitian = false;
    bool psd = false;
    double min_eigenvalue = 0.0;
    bool trace_ok = false;
    double trace = 0.0;
    double expected_trace = 0.0;
    double max_probability_deviation = 0.0;
    int samples = 0;
    unsigned seed = 0;
    bool passed() const {
        return hermitian && psd && trace_ok && max_probability_deviation < 1e-10;
    }
    /// The sampled probability-normalization check is necessary, not
    /// sufficient: passing it does not prove membership in the valid-process
    /// subspace.
    static constexpr const char *kCaveat = "sampled normalization check is necessary, not sufficient";
};

/// Operational validation: PSD and trace flags plus the worst deviation of
/// the total outcome probability from 1 over seeded random CPTP instruments
/// (pure-state preparations on past wires, trace-preserving instruments on
/// party wires, complete measurements on future wires).
ValidationReport validate_process(const ProcessMatrix &w, int samples, unsigned seed);

}  // namespace procmat

#endif
