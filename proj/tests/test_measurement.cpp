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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "procmat/measurement.hpp"

using namespace procmat;

TEST_CASE("shift ensemble contains the computational corners and is orthonormal") {
    InputEnsemble e = shift_basis();
    CHECK(e.states.size() == 8);
    bool has000 = false, has111 = false;
    for (const auto &[label, state] : e.states) {
        if (label == OutcomeWord{0, 0, 0}) {
            has000 = std::abs(state.vector()(0) - complex(1, 0)) < 1e-15;
        }
        if (label == OutcomeWord{1, 1, 1}) {
            has111 = std::abs(state.vector()(7) - complex(1, 0)) < 1e-15;
        }
    }
    CHECK(has000);
    CHECK(has111);
    for (size_t i = 0; i < e.states.size(); ++i) {
        for (size_t j = 0; j < e.states.size(); ++j) {
            complex ip = (e.states[i].second.vector().adjoint() * e.states[j].second.vector())(0, 0);
            CHECK(std::abs(std::abs(ip) - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("closed-form effects are the shift projectors") {
    DPOVM d = shift_closed_form();
    CHECK(completeness_check(d) < 1e-12);
    // (0,0,0) -> |000><000| and (1,0,1) -> |-01><-01|.
    Mat e000 = d.effect({0, 0, 0}).matrix();
    CHECK(std::abs(e000(0, 0) - complex(1, 0)) < 1e-15);
    CHECK(e000.cwiseAbs().sum() == doctest::Approx(1.0));
    Mat em01 = d.effect({1, 0, 1}).matrix();
    // |-01> has index pattern (P=|->, A=|0>, B=|1>): support on rows 1 and 5.
    CHECK(em01(1, 1).real() == doctest::Approx(0.5));
    CHECK(em01(5, 5).real() == doctest::Approx(0.5));
    CHECK(em01(1, 5).real() == doctest::Approx(-0.5));
}

TEST_CASE("lopf with hadamard families reproduces the lugano basis projectors") {
    DPOVM d = lopf_measurement(
        lugano_process(), std::vector<ProjectiveFamily>(3, ProjectiveFamily::hadamard_family()));
    NlweBasis basis = nlwe_basis(lugano_process());
    for (const auto &[label, state] : basis.states) {
        CHECK(d.effect(label).max_abs_diff(outer(state)) < 1e-14);
    }
    CHECK(completeness_check(d) < 1e-12);
}

TEST_CASE("lopf with computational families is the computational measurement") {
    std::array<std::array<Mat, 2>, 2> comp;
    for (int x = 0; x < 2; ++x) {
        for (int a = 0; a < 2; ++a) {
            Mat m = Mat::Zero(2, 2);
            m(a, a) = 1.0;
            comp[x][a] = m;
        }
    }
    DPOVM d = lopf_measurement(
        constant_process(3), std::vector<ProjectiveFamily>(3, ProjectiveFamily(comp)));
    for (const auto &[label, effect] : d.effects) {
        int idx = (label[0] << 2) | (label[1] << 1) | label[2];
        Mat expected = Mat::Zero(8, 8);
        expected(idx, idx) = 1.0;
        CHECK((effect.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("lopf on agb4 matches its basis projectors") {
    DPOVM d = lopf_measurement(
        agb4_process(), std::vector<ProjectiveFamily>(4, ProjectiveFamily::hadamard_family()));
    NlweBasis basis = nlwe_basis(agb4_process());
    for (const auto &[label, state] : basis.states) {
        CHECK(d.effect(label).max_abs_diff(outer(state)) < 1e-14);
    }
}

TEST_CASE("standard instruments are complete") {
    for (auto scen :
         {InstrumentScenario::SwitchShift, InstrumentScenario::QcqcShift, InstrumentScenario::Ndi}) {
        ScenarioInstruments ops = standard_instruments(scen);
        for (const auto &party : ops.parties) {
            CHECK(party.completeness_defect() < 1e-12);
        }
    }
    // The final measurement of the target-wire scenario resolves the identity
    // on (F, Ft).
    ScenarioInstruments ops = standard_instruments(InstrumentScenario::QcqcShift);
    Mat sum = Mat::Zero(4, 4);
    for (const auto &el : ops.final_elements) {
        sum += el.matrix();
    }
    CHECK((sum - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(standard_instruments(InstrumentScenario::Ndi).final_elements.size() == 4);
}

TEST_CASE("switch measurement equals the closed form entrywise") {
    DPOVM d = effective_dpovm(quantum_switch(), standard_instruments(InstrumentScenario::SwitchShift));
    DPOVM closed = shift_closed_form();
    CHECK(d.wires.size() == 3);
    for (const auto &[word, effect] : d.effects) {
        CHECK(effect.max_abs_diff(closed.effect(word)) < 1e-12);
    }
    CHECK(completeness_check(d) < 1e-10);
}

TEST_CASE("control-routed measurement equals the closed form entrywise") {
    DPOVM d = effective_dpovm(
        to_qcqc(lugano_process(), 2), standard_instruments(InstrumentScenario::QcqcShift));
    DPOVM closed = shift_closed_form();
    for (const auto &[word, effect] : d.effects) {
        CHECK(effect.max_abs_diff(closed.effect(word)) < 1e-12);
    }
    CHECK(completeness_check(d) < 1e-10);
}

TEST_CASE("losupcc equals the closed form on the lugano function") {
    DPOVM d = losupcc_measurement(lugano_process(), 2);
    DPOVM closed = shift_closed_form();
    for (const auto &[word, effect] : d.effects) {
        CHECK(effect.max_abs_diff(closed.effect(word)) < 1e-12);
    }
}

TEST_CASE("losupcc matches the basis projectors for a four-partite control party") {
    BooleanProcessFunction w = ardehali_svetlichny4_process();
    DPOVM d = losupcc_measurement(w, 0);
    NlweBasis basis = nlwe_basis(w);
    for (const auto &[word, effect] : d.effects) {
        // word = (f, a_{\0}); the full label puts f at the control slot.
        std::vector<int> label = {word[0], word[1], word[2], word[3]};
        LabeledOperator projector;
        for (const auto &[blabel, state] : basis.states) {
            if (blabel == label) {
                projector = outer(state);
            }
        }
        LabeledOperator renamed = projector;
        renamed.rename_space("A", "P");
        CHECK(effect.max_abs_diff(renamed) < 1e-12);
    }
    CHECK(completeness_check(d) < 1e-10);
}

TEST_CASE("losupcc rejects non-transparent parties and global-past functions") {
    CHECK_THROWS_AS(losupcc_measurement(ardehali_svetlichny4_process(), 1), Error);
    CHECK_THROWS_AS(losupcc_measurement(constant_process(3), 0), Error);
}

TEST_CASE("the shift measurement implements the lugano channel") {
    BooleanProcessFunction w = lugano_process();
    for (uint32_t word = 0; word < 8; ++word) {
        std::vector<int> bits = {
            static_cast<int>((word >> 2) & 1), static_cast<int>((word >> 1) & 1),
            static_cast<int>(word & 1)};
        LuganoChannelResult res = lugano_channel_from_shift(bits);
        std::vector<int> expected = w.evaluate(bits);
        double mass = 0;
        for (const auto &[inputs, p] : res.distribution) {
            if (inputs == expected) {
                mass += p;
            }
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
    // The (0,1,0) input resolves through the two conjugate-basis outcomes.
    LuganoChannelResult res = lugano_channel_from_shift({0, 1, 0});
    CHECK(res.outcome_probabilities.at("01+") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.outcome_probabilities.at("01-") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.outcome_probabilities.size() == 2);
}

TEST_CASE("completeness check flags a lone projector") {
    DPOVM closed = shift_closed_form();
    DPOVM lone;
    lone.wires = closed.wires;
    lone.effects.push_back(closed.effects.front());
    CHECK(completeness_check(lone) == doctest::Approx(1.0));
}

TEST_CASE("effects are positive with probabilities in range") {
    DPOVM d = effective_dpovm(quantum_switch(), standard_instruments(InstrumentScenario::SwitchShift));
    InputEnsemble e = shift_basis();
    for (const auto &[word, effect] : d.effects) {
        CHECK(effect.is_hermitian(1e-10));
        CHECK(effect.min_eigenvalue() > -1e-10);
        for (const auto &[label, state] : e.states) {
            LabeledKet routed = permute_spaces(state, {"C", "A", "B"});
            LabeledKet on_wires(effect.spaces(), routed.vector());
            complex p = (on_wires.vector().adjoint() * effect.matrix() * on_wires.vector())(0, 0);
            CHECK(p.real() > -1e-10);
            CHECK(p.real() < 1.0 + 1e-10);
        }
    }
}
