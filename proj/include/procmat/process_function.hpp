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

#ifndef PROCMAT_PROCESS_FUNCTION_HPP
#define PROCMAT_PROCESS_FUNCTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "procmat/labeled_operator.hpp"

namespace procmat {

/// A deterministic classical process on N parties: party i's input bit is a
/// Boolean function w_i of the other parties' output bits. Non-self-signalling
/// is structural: w_i never reads party i's own output.
///
/// Truth tables are indexed by the binary word of the other parties' outputs
/// in ascending party order, first listed party most significant.
class BooleanProcessFunction {
   public:
    BooleanProcessFunction(int n_parties, std::vector<std::vector<uint8_t>> tables);

    int n_parties() const {
        return n_;
    }
    const std::vector<std::vector<uint8_t>> &tables() const {
        return tables_;
    }

    /// Input bit delivered to party i for the given full output word.
    int input_of(int party, const std::vector<int> &outputs) const;
    int input_of_word(int party, uint32_t outputs_word) const;

    /// All inputs (w_1(a_{\1}), ..., w_N(a_{\N})) for a full output word.
    std::vector<int> evaluate(const std::vector<int> &outputs) const;
    uint32_t evaluate_word(uint32_t outputs_word) const;

    /// Single-letter wire name of a party: A, B, C, D for N <= 4, else A^j.
    static std::string party_wire_name(int party, int n_parties);

   private:
    int n_;
    std::vector<std::vector<uint8_t>> tables_;
};

/// Logical consistency: for every tuple of deterministic local response maps
/// f_i: {0,1} -> {0,1}, exactly one output word satisfies a_i = f_i(w_i(..))
/// for all i. Exhaustive over the 4^N map tuples and 2^N words.
bool check_unique_fixed_point(const BooleanProcessFunction &w);

/// True iff every party's input depends on at least one other party's output.
bool check_no_global_past(const BooleanProcessFunction &w);

/// True iff whenever party i's input is 1, the other parties' inputs do not
/// depend on party i's output. Such a party can act as a control.
bool check_transparent_control(const BooleanProcessFunction &w, int party);

/// The orthonormal product basis { H^{w(a)} |a> } on the party wires. Each
/// state's label is its output word a; party j's factor is H^{w_j(a)} |a_j>.
struct NlweBasis {
    std::vector<SpaceLabel> wires;
    std::vector<std::pair<std::vector<int>, LabeledKet>> states;
};

NlweBasis nlwe_basis(const BooleanProcessFunction &w);  // throws HasGlobalPast

// Named built-ins.
BooleanProcessFunction lugano_process();
BooleanProcessFunction agb4_process();
BooleanProcessFunction ardehali_svetlichny4_process();
BooleanProcessFunction tobar_costa4_process();
BooleanProcessFunction constant_process(int n_parties);

/// Looks up a built-in by its catalog name (lugano, agb4,
/// ardehali_svetlichny4, tobar_costa4). Throws UnknownScenario.
BooleanProcessFunction builtin_process(const std::string &name);
std::vector<std::string> builtin_process_names();

}  // namespace procmat

#endif
