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

#include "procmat/measurement.hpp"

#include <algorithm>

namespace procmat {

namespace {

int word_bit(uint32_t word, int j, int n) {
    return (word >> (n - 1 - j)) & 1u;
}

Mat qubit_projector(int outcome, int hadamard) {
    Mat h = hadamard_power(hadamard);
    Vec v = h.col(outcome);
    return v * v.adjoint();
}

}  // namespace

ProjectiveFamily::ProjectiveFamily(std::array<std::array<Mat, 2>, 2> projectors)
    : projectors_(std::move(projectors)) {
    for (int x = 0; x < 2; ++x) {
        Mat sum = projectors_[x][0] + projectors_[x][1];
        if ((sum - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-12) {
            throw Error(ErrorKind::WireMismatch, "projective family is not complete");
        }
        for (int a = 0; a < 2; ++a) {
            const Mat &m = projectors_[x][a];
            if ((m * m - m).cwiseAbs().maxCoeff() > 1e-12 || (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
                throw Error(ErrorKind::WireMismatch, "family element is not a projector");
            }
        }
    }
}

ProjectiveFamily ProjectiveFamily::hadamard_family() {
    std::array<std::array<Mat, 2>, 2> p;
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            p[x][a] = qubit_projector(a, x);
        }
    }
    return ProjectiveFamily(std::move(p));
}

const Mat &ProjectiveFamily::projector(int outcome, int setting) const {
    return projectors_[setting][outcome];
}

double Instrument::completeness_defect() const {
    if (elements.empty()) {
        throw Error(ErrorKind::LengthMismatch, "instrument has no elements");
    }
    LabeledOperator sum = elements[0];
    for (size_t k = 1; k < elements.size(); ++k) {
        LabeledOperator aligned = permute_spaces(elements[k], sum.space_names());
        sum.matrix() += aligned.matrix();
    }
    std::set<std::string> out(output_wires.begin(), output_wires.end());
    LabeledOperator reduced = partial_trace(sum, out);
    Mat eye = Mat::Identity(reduced.side(), reduced.side());
    return (reduced.matrix() - eye).cwiseAbs().maxCoeff();
}

const LabeledOperator &DPOVM::effect(const OutcomeWord &word) const {
    for (const auto &[w, op] : effects) {
        if (w == word) {
            return op;
        }
    }
    throw Error(ErrorKind::LengthMismatch, "no effect with the requested outcome word");
}

LabeledOperator DPOVM::effect_sum() const {
    if (effects.empty()) {
        throw Error(ErrorKind::LengthMismatch, "measurement has no effects");
    }
    LabeledOperator sum = effects[0].second;
    for (size_t k = 1; k < effects.size(); ++k) {
        LabeledOperator aligned = permute_spaces(effects[k].second, sum.space_names());
        sum.matrix() += aligned.matrix();
    }
    return sum;
}

double completeness_check(const DPOVM &d) {
    LabeledOperator sum = d.effect_sum();
    Mat eye = Mat::Identity(sum.side(), sum.side());
    return (sum.matrix() - eye).cwiseAbs().maxCoeff();
}

InputEnsemble nlwe_ensemble(const BooleanProcessFunction &w) {
    NlweBasis basis = nlwe_basis(w);
    InputEnsemble e;
    e.wires = basis.wires;
    for (auto &[label, state] : basis.states) {
        e.states.emplace_back(label, state);
    }
    e.prior.assign(e.states.size(), 1.0 / static_cast<double>(e.states.size()));
    return e;
}

InputEnsemble shift_basis() {
    return nlwe_ensemble(lugano_process());
}

DPOVM lopf_measurement(const BooleanProcessFunction &w, const std::vector<ProjectiveFamily> &families) {
    const int n = w.n_parties();
    if (families.size() != static_cast<size_t>(n)) {
        throw Error(ErrorKind::LengthMismatch, "need one projective family per party");
    }
    if (!check_unique_fixed_point(w)) {
        throw Error(ErrorKind::InvalidProcessFunction, "process function violates the unique fixed point condition");
    }
    DPOVM d;
    for (int j = 0; j < n; ++j) {
        d.wires.push_back({BooleanProcessFunction::party_wire_name(j, n), 2});
    }
    for (uint32_t a = 0; a < (1u << n); ++a) {
        OutcomeWord word(n);
        LabeledOperator effect;
        for (int j = 0; j < n; ++j) {
            word[j] = word_bit(a, j, n);
            int setting = w.input_of_word(j, a);
            LabeledOperator factor({d.wires[j]}, families[j].projector(word[j], setting));
            effect = j == 0 ? factor : tensor(effect, factor);
        }
        d.effects.emplace_back(std::move(word), std::move(effect));
    }
    return d;
}

InstrumentScenario scenario_from_string(const std::string &name) {
    if (name == "switch_shift") {
        return InstrumentScenario::SwitchShift;
    }
    if (name == "qcqc_shift") {
        return InstrumentScenario::QcqcShift;
    }
    if (name == "ndi") {
        return InstrumentScenario::Ndi;
    }
    throw Error(ErrorKind::UnknownScenario, "unknown instrument scenario '" + name + "'");
}

namespace {

// Measure the delivered setting on the party's input slot, measure the
// auxiliary qubit in the selected basis, send the outcome back: the element
// of outcome a is sum_x H^x|a><a|(H^x)^dag (x) |x><x| (x) |a><a|.
Instrument setting_reading_instrument(const std::string &aux, int party_suffix) {
    Instrument inst;
    inst.output_wires = {party_output_wire(party_suffix)};
    SpaceLabel aux_s{aux, 2};
    SpaceLabel in_s{party_input_wire(party_suffix), 2};
    SpaceLabel out_s{party_output_wire(party_suffix), 2};
    for (int a = 0; a < 2; ++a) {
        LabeledOperator sum({aux_s, in_s, out_s}, Mat::Zero(8, 8));
        for (int x = 0; x < 2; ++x) {
            LabeledOperator term = tensor(
                tensor(
                    LabeledOperator({aux_s}, qubit_projector(a, x)),
                    LabeledOperator({in_s}, qubit_projector(x, 0))),
                LabeledOperator({out_s}, qubit_projector(a, 0)));
            sum.matrix() += term.matrix();
        }
        inst.elements.push_back(std::move(sum));
    }
    return inst;
}

// Output the delivered setting as the classical outcome and echo a fixed bit
// distribution back: the element of outcome x is
// sum_a |a><a| (x) |x><x| (x) |a><a|.
Instrument setting_outputting_instrument(const std::string &aux, int party_suffix) {
    Instrument inst;
    inst.output_wires = {party_output_wire(party_suffix)};
    SpaceLabel aux_s{aux, 2};
    SpaceLabel in_s{party_input_wire(party_suffix), 2};
    SpaceLabel out_s{party_output_wire(party_suffix), 2};
    for (int x = 0; x < 2; ++x) {
        LabeledOperator sum({aux_s, in_s, out_s}, Mat::Zero(8, 8));
        for (int a = 0; a < 2; ++a) {
            LabeledOperator term = tensor(
                tensor(
                    LabeledOperator({aux_s}, qubit_projector(a, 0)),
                    LabeledOperator({in_s}, qubit_projector(x, 0))),
                LabeledOperator({out_s}, qubit_projector(a, 0)));
            sum.matrix() += term.matrix();
        }
        inst.elements.push_back(std::move(sum));
    }
    return inst;
}

LabeledOperator final_measure_with_setting_readout(int f, int z) {
    return tensor(
        LabeledOperator({{"F", 2}}, qubit_projector(f, z)),
        LabeledOperator({{"Ft", 2}}, qubit_projector(z, 0)));
}

}  // namespace

ScenarioInstruments standard_instruments(InstrumentScenario scenario) {
    ScenarioInstruments ops;
    switch (scenario) {
        case InstrumentScenario::SwitchShift: {
            ops.parties = {setting_reading_instrument("A", 1), setting_reading_instrument("B", 2)};
            ops.final_is_conditional = true;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    int z = b & (a ^ 1);
                    std::vector<LabeledOperator> fam;
                    for (int f = 0; f < 2; ++f) {
                        fam.emplace_back(LabeledOperator({{"F", 2}}, qubit_projector(f, z)));
                    }
                    ops.conditional_final[OutcomeWord{a, b}] = std::move(fam);
                }
            }
            ops.final_word_labels = {{0}, {1}};
            break;
        }
        case InstrumentScenario::QcqcShift: {
            ops.parties = {setting_reading_instrument("A", 1), setting_reading_instrument("B", 2)};
            for (int f = 0; f < 2; ++f) {
                LabeledOperator sum({{"F", 2}, {"Ft", 2}}, Mat::Zero(4, 4));
                for (int z = 0; z < 2; ++z) {
                    sum.matrix() += final_measure_with_setting_readout(f, z).matrix();
                }
                ops.final_elements.push_back(std::move(sum));
            }
            ops.final_word_labels = {{0}, {1}};
            ops.past_channel =
                outer(choi_vector_of_unitary(Mat::Identity(2, 2), {"Pin", 2}, {"P", 2}));
            ops.past_aux_wire = "Pin";
            break;
        }
        case InstrumentScenario::Ndi: {
            ops.parties = {setting_outputting_instrument("A", 1), setting_outputting_instrument("B", 2)};
            for (int f = 0; f < 2; ++f) {
                for (int z = 0; z < 2; ++z) {
                    ops.final_elements.push_back(final_measure_with_setting_readout(f, z));
                    ops.final_word_labels.push_back({f, z});
                }
            }
            ops.past_channel =
                outer(choi_vector_of_unitary(Mat::Identity(2, 2), {"Pin", 2}, {"P", 2}));
            ops.past_aux_wire = "Pin";
            break;
        }
    }
    return ops;
}

DPOVM effective_dpovm(const ProcessMatrix &w, const ScenarioInstruments &ops) {
    LabeledOperator base = w.op();
    if (ops.past_channel) {
        if (!w.has_wire("P")) {
            throw Error(ErrorKind::WireMismatch, "scenario routes a past wire but the process has none");
        }
        base = link_product(base, *ops.past_channel);
    }
    for (const auto &party : ops.parties) {
        for (const auto &el : party.elements) {
            for (const auto &s : el.spaces()) {
                bool is_aux = !w.has_wire(s.name);
                if (!is_aux && !base.has_space(s.name)) {
                    throw Error(ErrorKind::WireMismatch, "instrument wire '" + s.name + "' is not on the process");
                }
            }
        }
    }
    const size_t nparties = ops.parties.size();
    std::vector<int> combo(nparties, 0);
    DPOVM d;
    while (true) {
        LabeledOperator acc = base;
        for (size_t j = 0; j < nparties; ++j) {
            acc = link_product(acc, ops.parties[j].elements[combo[j]]);
        }
        OutcomeWord party_word(combo.begin(), combo.end());
        const std::vector<LabeledOperator> *fam = nullptr;
        if (ops.final_is_conditional) {
            auto it = ops.conditional_final.find(party_word);
            if (it == ops.conditional_final.end()) {
                throw Error(ErrorKind::WireMismatch, "no final measurement for this outcome word");
            }
            fam = &it->second;
        } else if (!ops.final_elements.empty()) {
            fam = &ops.final_elements;
        }
        if (fam != nullptr) {
            for (size_t fi = 0; fi < fam->size(); ++fi) {
                LabeledOperator effect = link_product(acc, (*fam)[fi]);
                OutcomeWord word =
                    fi < ops.final_word_labels.size() ? ops.final_word_labels[fi] : OutcomeWord{static_cast<int>(fi)};
                word.insert(word.end(), party_word.begin(), party_word.end());
                d.effects.emplace_back(std::move(word), std::move(effect));
            }
        } else {
            d.effects.emplace_back(party_word, acc);
        }
        // next combo
        size_t j = 0;
        for (; j < nparties; ++j) {
            if (static_cast<size_t>(++combo[j]) < ops.parties[j].elements.size()) {
                break;
            }
            combo[j] = 0;
        }
        if (j == nparties) {
            break;
        }
    }
    if (!ops.past_aux_wire.empty()) {
        for (auto &[word, effect] : d.effects) {
            effect.rename_space(ops.past_aux_wire, "P");
        }
    }
    // Canonical wire order: P first when present, then the auxiliary wires in
    // party order, then anything else the links left behind.
    std::vector<std::string> order;
    const LabeledOperator &sample = d.effects.front().second;
    if (sample.has_space("P")) {
        order.push_back("P");
    }
    for (const auto &party : ops.parties) {
        for (const auto &s : party.elements.front().spaces()) {
            if (!w.has_wire(s.name) && sample.has_space(s.name)) {
                order.push_back(s.name);
            }
        }
    }
    for (const auto &s : sample.spaces()) {
        if (std::find(order.begin(), order.end(), s.name) == order.end()) {
            order.push_back(s.name);
        }
    }
    d.wires.clear();
    for (auto &[word, effect] : d.effects) {
        effect = permute_spaces(effect, order);
    }
    for (const auto &s : d.effects.front().second.spaces()) {
        d.wires.push_back(s);
    }
    return d;
}

DPOVM shift_closed_form() {
    DPOVM d;
    d.wires = {{"P", 2}, {"A", 2}, {"B", 2}};
    for (int f = 0; f < 2; ++f) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                int z = b & (a ^ 1);
                int xa = f & (b ^ 1);
                int xb = a & (f ^ 1);
                LabeledOperator effect = tensor(
                    tensor(
                        LabeledOperator({d.wires[0]}, qubit_projector(f, z)),
                        LabeledOperator({d.wires[1]}, qubit_projector(a, xa))),
                    LabeledOperator({d.wires[2]}, qubit_projector(b, xb)));
                d.effects.emplace_back(OutcomeWord{f, a, b}, std::move(effect));
            }
        }
    }
    return d;
}

DPOVM losupcc_measurement(const BooleanProcessFunction &w, int party) {
    const int n = w.n_parties();
    if (party < 0 || party >= n) {
        throw Error(ErrorKind::LengthMismatch, "party index out of range");
    }
    if (!check_no_global_past(w)) {
        throw Error(ErrorKind::HasGlobalPast, "process function has a global past");
    }
    if (!check_transparent_control(w, party)) {
        throw Error(ErrorKind::NotTransparent, "party does not satisfy the transparent control condition");
    }
    DPOVM d;
    d.wires.push_back({"P", 2});
    for (int j = 0; j < n; ++j) {
        if (j != party) {
            d.wires.push_back({BooleanProcessFunction::party_wire_name(j, n), 2});
        }
    }
    for (uint32_t rest = 0; rest < (1u << (n - 1)); ++rest) {
        for (int f = 0; f < 2; ++f) {
            // Full label with the control party's bit set to f.
            uint32_t full = 0;
            int pos = 0;
            for (int j = 0; j < n; ++j) {
                int bit;
                if (j == party) {
                    bit = f;
                } else {
                    bit = (rest >> (n - 2 - pos)) & 1u;
                    ++pos;
                }
                full = (full << 1) | static_cast<uint32_t>(bit);
            }
            int xi = w.input_of_word(party, full);
            LabeledOperator effect({d.wires[0]}, qubit_projector(f, xi));
            OutcomeWord word{f};
            int wire_pos = 1;
            for (int j = 0; j < n; ++j) {
                if (j == party) {
                    continue;
                }
                int aj = word_bit(full, j, n);
                word.push_back(aj);
                int xj = w.input_of_word(j, full);
                effect = tensor(effect, LabeledOperator({d.wires[wire_pos]}, qubit_projector(aj, xj)));
                ++wire_pos;
            }
            d.effects.emplace_back(std::move(word), std::move(effect));
        }
    }
    return d;
}

LuganoChannelResult lugano_channel_from_shift(const std::vector<int> &outputs) {
    if (outputs.size() != 3) {
        throw Error(ErrorKind::LengthMismatch, "expected three output bits");
    }
    BooleanProcessFunction lugano = lugano_process();
    NlweBasis basis = nlwe_basis(lugano);
    LabeledKet encoded = basis_ket(basis.wires, outputs);
    LuganoChannelResult result;
    for (const auto &[label, state] : basis.states) {
        complex amp = (state.vector().adjoint() * encoded.vector())(0, 0);
        double p = std::norm(amp);
        if (p < 1e-15) {
            continue;
        }
        // Outcome letters of this basis element and the induced input bits.
        std::string letters;
        OutcomeWord inputs;
        uint32_t full = 0;
        for (int j = 0; j < 3; ++j) {
            full = (full << 1) | static_cast<uint32_t>(label[j]);
        }
        for (int j = 0; j < 3; ++j) {
            int h = lugano.input_of_word(j, full);
            letters += h == 0 ? static_cast<char>('0' + label[j]) : (label[j] == 0 ? '+' : '-');
            inputs.push_back(h);
        }
        result.outcome_probabilities[letters] += p;
        result.distribution[inputs] += p;
    }
    return result;
}

}  // namespace procmat
