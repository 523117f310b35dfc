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

#ifndef PROCMAT_MEASUREMENT_HPP
#define PROCMAT_MEASUREMENT_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "procmat/process_matrix.hpp"

namespace procmat {

/// Two rank-1 projective measurements on one qubit, one per setting bit.
class ProjectiveFamily {
   public:
    /// families[x][a] = projector of outcome a under setting x.
    ProjectiveFamily(std::array<std::array<Mat, 2>, 2> projectors);

    /// The Hadamard-power family: H^x |a><a| (H^x)^dag.
    static ProjectiveFamily hadamard_family();

    const Mat &projector(int outcome, int setting) const;

   private:
    std::array<std::array<Mat, 2>, 2> projectors_;
};

/// An outcome-labeled family of CP maps in Choi form on declared wires; the
/// sum traced over the output wires must be the identity on the rest.
struct Instrument {
    std::vector<LabeledOperator> elements;
    std::vector<std::string> output_wires;

    /// Max-norm defect of sum_a Tr_out(element_a) from the identity.
    double completeness_defect() const;
};

using OutcomeWord = std::vector<int>;

/// An effective distributed measurement: outcome-word-labeled PSD effects on
/// auxiliary wires, summing to the identity.
struct DPOVM {
    std::vector<SpaceLabel> wires;
    std::vector<std::pair<OutcomeWord, LabeledOperator>> effects;

    const LabeledOperator &effect(const OutcomeWord &word) const;
    LabeledOperator effect_sum() const;
};

/// Max-norm defect of the effect sum from the identity.
double completeness_check(const DPOVM &d);

/// Label-indexed pure product states with a prior.
struct InputEnsemble {
    std::vector<SpaceLabel> wires;
    std::vector<std::pair<OutcomeWord, LabeledKet>> states;
    std::vector<double> prior;  // same length as states
};

/// The 8 tripartite product states measured by local operations with the
/// lugano process: label word a, state (x) H^{w_j(a)} |a_j> on wires A, B, C.
InputEnsemble shift_basis();

/// Ensemble of nlwe_basis(w) states with a uniform prior.
InputEnsemble nlwe_ensemble(const BooleanProcessFunction &w);

/// Effective measurement of local projective families wired through a
/// process function: the effect of outcome word a is the product of each
/// party's projector at the setting the process delivers.
DPOVM lopf_measurement(const BooleanProcessFunction &w, const std::vector<ProjectiveFamily> &families);

enum class InstrumentScenario {
    SwitchShift,  // measure the delivered setting, then the auxiliary qubit
    QcqcShift,    // same parties; the final party reads the setting from Ft
    Ndi,          // classical party outputs; setting bits become outcomes
};

InstrumentScenario scenario_from_string(const std::string &name);

/// The named instrument tuples. Party instruments live on (aux, A_I^j, A_O^j);
/// the final measurement and past-wire channel are declared separately in
/// EffectiveSpec.
struct ScenarioInstruments {
    std::vector<Instrument> parties;  // Alice, Bob (aux wires "A", "B")
    // Final measurement on the global future wires. Unconditional: elements
    // indexed by outcome. Conditional: one family per party-outcome word.
    std::vector<LabeledOperator> final_elements;
    std::map<OutcomeWord, std::vector<LabeledOperator>> conditional_final;
    bool final_is_conditional = false;
    // Outcome-word fragment contributed by the final measurement, parallel to
    // the element index ((f) for the shift scenarios, (f, z) for ndi).
    std::vector<OutcomeWord> final_word_labels;
    // Identity channel from a fresh auxiliary wire into the global past wire,
    // when the scenario uses one.
    std::optional<LabeledOperator> past_channel;
    std::string past_aux_wire;
};

ScenarioInstruments standard_instruments(InstrumentScenario scenario);

/// Contracts a process with party instruments and a final measurement into
/// the induced distributed measurement. Outcome words are ordered (final
/// outcome, party outcomes...) when a final measurement is present, else just
/// the party outcomes.
DPOVM effective_dpovm(const ProcessMatrix &w, const ScenarioInstruments &ops);

/// The 8 effects of the switch construction written directly from the
/// reduced process functions x = f(b+1), y = a(f+1) and the control basis
/// selector z = b(a+1); outcome words are (f, a, b) on wires (P, A, B).
DPOVM shift_closed_form();

/// The measurement on (control, other parties) induced by quantum control of
/// the classical communications of w, written in closed form: for outcome
/// (f, a_{\i}) the control factor is H^{w_i(a_{\i})} |f><f| H^{w_i(a_{\i})}
/// and party j != i measures at the setting w_j delivers with a_i := f.
/// Requires no global past and transparent control on `party` (0-based).
DPOVM losupcc_measurement(const BooleanProcessFunction &w, int party);

/// Distribution over delivered-input words (x, y, z) obtained by encoding
/// |abc>, measuring it in the shift basis, and mapping each outcome letter
/// through 0,1 -> 0 and +,- -> 1.
struct LuganoChannelResult {
    std::map<OutcomeWord, double> distribution;          // over (x, y, z)
    std::map<std::string, double> outcome_probabilities;  // per basis letter triple
};

LuganoChannelResult lugano_channel_from_shift(const std::vector<int> &outputs);

}  // namespace procmat

#endif
