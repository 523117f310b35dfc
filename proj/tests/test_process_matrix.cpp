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

#include "procmat/process_matrix.hpp"

using namespace procmat;

namespace {

// Independent oracle for the control-routed process: four control blocks
// |u><u'| on (P, F), the other parties' outputs copied on their output wires
// and their inputs evaluated with the control party's bit set to u (ket) and
// u' (bra), the control party's own input pinned on Ft.
LabeledOperator four_block_form(const BooleanProcessFunction &w, int party) {
    const int n = w.n_parties();
    std::vector<SpaceLabel> spaces = {{"P", 2}, {"F", 2}};
    for (int j = 0; j < n; ++j) {
        if (j == party) {
            continue;
        }
        spaces.push_back({party_input_wire(j + 1), 2});
        spaces.push_back({party_output_wire(j + 1), 2});
    }
    spaces.push_back({"Ft", 2});
    Eigen::Index side = 1ll << spaces.size();
    Mat total = Mat::Zero(side, side);
    for (int u = 0; u < 2; ++u) {
        for (int up = 0; up < 2; ++up) {
            for (uint32_t rest = 0; rest < (1u << (n - 1)); ++rest) {
                auto full_word = [&](int ctrl) {
                    uint32_t word = 0;
                    int pos = 0;
                    for (int j = 0; j < n; ++j) {
                        int bit = j == party ? ctrl : ((rest >> (n - 2 - pos)) & 1u);
                        if (j != party) {
                            ++pos;
                        }
                        word = (word << 1) | static_cast<uint32_t>(bit);
                    }
                    return word;
                };
                uint32_t wu = full_word(u), wup = full_word(up);
                int xi = w.input_of_word(party, wu);
                std::vector<int> kb = {u, u}, bb = {up, up};
                for (int j = 0; j < n; ++j) {
                    if (j == party) {
                        continue;
                    }
                    int aj = (wu >> (n - 1 - j)) & 1u;
                    kb.push_back(w.input_of_word(j, wu));
                    kb.push_back(aj);
                    bb.push_back(w.input_of_word(j, wup));
                    bb.push_back(aj);
                }
                kb.push_back(xi);
                bb.push_back(xi);
                LabeledKet k = basis_ket(spaces, kb), b = basis_ket(spaces, bb);
                total += k.vector() * b.vector().adjoint();
            }
        }
    }
    return LabeledOperator(spaces, total);
}

// One (a, b) summand of the switch-like process vector obtained from the
// lugano function with the third party as control, both control branches.
LabeledKet lugano_qcqc_sector(int a, int b) {
    int z = b & (a ^ 1);
    LabeledKet branch0 = tensor(
        tensor(
            tensor(qubit_ket("P", 0, 0), qubit_ket("F", 0, 0)),
            tensor(
                tensor(qubit_ket("A_I^1", 0, 0), qubit_ket("A_O^1", a, 0)),
                tensor(qubit_ket("A_I^2", a, 0), qubit_ket("A_O^2", b, 0)))),
        qubit_ket("Ft", z, 0));
    LabeledKet branch1 = tensor(
        tensor(
            tensor(qubit_ket("P", 1, 0), qubit_ket("F", 1, 0)),
            tensor(
                tensor(qubit_ket("A_I^1", b ^ 1, 0), qubit_ket("A_O^1", a, 0)),
                tensor(qubit_ket("A_I^2", 0, 0), qubit_ket("A_O^2", b, 0)))),
        qubit_ket("Ft", z, 0));
    return add(branch0, branch1);
}

LabeledOperator recover_from_purification(const BooleanProcessFunction &w) {
    const int n = w.n_parties();
    ProcessMatrix rev = purify(w);
    std::vector<SpaceLabel> past;
    std::set<std::string> futures;
    for (int j = 1; j <= n; ++j) {
        past.push_back({"P^" + std::to_string(j), 2});
        futures.insert("F^" + std::to_string(j));
    }
    LabeledKet pinned = ket_link(basis_ket(past, std::vector<int>(n, 0)), rev.pure());
    return trace_outer(pinned, futures);
}

}  // namespace

TEST_CASE("diagonal process of the lugano function") {
    ProcessMatrix w = from_process_function(lugano_process());
    CHECK(w.op().side() == 64);
    CHECK(w.trace() == 8.0);
    // Diagonal with exactly 8 unit entries.
    Mat m = w.op().matrix();
    int ones = 0;
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) {
            if (i == j) {
                ones += m(i, j) == complex(1.0, 0.0) ? 1 : 0;
            } else {
                CHECK(m(i, j) == complex(0.0, 0.0));
            }
        }
    }
    CHECK(ones == 8);
}

TEST_CASE("constant process gives identity on outputs and a pinned input word") {
    ProcessMatrix w = from_process_function(constant_process(3));
    LabeledOperator expected = identity_operator({{party_output_wire(1), 2},
                                                  {party_output_wire(2), 2},
                                                  {party_output_wire(3), 2}});
    LabeledKet zeros = basis_ket(
        {{party_input_wire(1), 2}, {party_input_wire(2), 2}, {party_input_wire(3), 2}}, {0, 0, 0});
    LabeledOperator full = tensor(expected, outer(zeros));
    CHECK(w.op().max_abs_diff(full) == 0.0);
}

TEST_CASE("from_process_function rejects inconsistent functions") {
    BooleanProcessFunction loop(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(from_process_function(loop), Error);
}

TEST_CASE("purification is rank one with the right trace") {
    for (const char *name : {"lugano", "agb4"}) {
        BooleanProcessFunction w = builtin_process(name);
        ProcessMatrix rev = purify(w);
        CHECK(rev.is_pure());
        double n2 = rev.trace();
        CHECK(n2 == std::pow(4.0, w.n_parties()));
    }
}

TEST_CASE("pinning the past and tracing the future recovers the diagonal process") {
    for (const auto &name : builtin_process_names()) {
        BooleanProcessFunction w = builtin_process(name);
        LabeledOperator recovered = recover_from_purification(w);
        CHECK(recovered.max_abs_diff(from_process_function(w).op()) < 1e-12);
    }
}

TEST_CASE("partial purification: tracing the open future recovers the process") {
    for (const auto &name : builtin_process_names()) {
        BooleanProcessFunction w = builtin_process(name);
        for (int party = 0; party < w.n_parties(); ++party) {
            ProcessMatrix prev = partial_purify(w, party);
            CHECK(prev.trace() == std::pow(2.0, w.n_parties()));
            CHECK(prev.op().min_eigenvalue() > -1e-9);
            LabeledOperator traced = partial_trace(prev.op(), {"F"});
            CHECK(traced.max_abs_diff(from_process_function(w).op()) < 1e-12);
        }
    }
}

TEST_CASE("lugano control-routed process equals the sector vectors") {
    ProcessMatrix qcqc = to_qcqc(lugano_process(), 2);
    CHECK(qcqc.trace() == 8.0);
    Mat total = Mat::Zero(128, 128);
    auto order = qcqc.op().space_names();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            LabeledKet sector = permute_spaces(lugano_qcqc_sector(a, b), order);
            total += sector.vector() * sector.vector().adjoint();
        }
    }
    CHECK((total - qcqc.op().matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("control-routed processes match the four-block oracle") {
    struct Case {
        const char *name;
        std::vector<int> parties;
    };
    for (const Case &c : {Case{"lugano", {0, 1, 2}},
                          Case{"agb4", {0, 1, 2, 3}},
                          Case{"ardehali_svetlichny4", {0, 2}},
                          Case{"tobar_costa4", {0, 2, 3}}}) {
        BooleanProcessFunction w = builtin_process(c.name);
        for (int party : c.parties) {
            ProcessMatrix qcqc = to_qcqc(w, party);
            CHECK(qcqc.op().max_abs_diff(four_block_form(w, party)) < 1e-12);
            CHECK(qcqc.trace() == std::pow(2.0, w.n_parties()));
        }
    }
}

TEST_CASE("to_qcqc rejects non-transparent control parties") {
    CHECK_THROWS_AS(to_qcqc(ardehali_svetlichny4_process(), 1), Error);
    CHECK_THROWS_AS(to_qcqc(ardehali_svetlichny4_process(), 3), Error);
    CHECK_THROWS_AS(to_qcqc(tobar_costa4_process(), 1), Error);
}

TEST_CASE("switch process basics") {
    ProcessMatrix qs = quantum_switch();
    CHECK(qs.trace() == 8.0);
    CHECK(qs.op().side() == 64);
    CHECK(qs.op().min_eigenvalue() > -1e-9);
    Eigen::SelfAdjointEigenSolver<Mat> es(qs.op().matrix(), Eigen::EigenvaluesOnly);
    int rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        rank += es.eigenvalues()(i) > 1e-9 ? 1 : 0;
    }
    CHECK(rank <= 2);
}

TEST_CASE("pinning the switch control to 0 leaves the A-before-B relay") {
    ProcessMatrix qs = quantum_switch();
    LabeledOperator pinned = link_product(
        qs.op(), tensor(
                     LabeledOperator({{"P", 2}}, hadamard_power(0).col(0) * hadamard_power(0).col(0).adjoint()),
                     LabeledOperator({{"F", 2}}, hadamard_power(0).col(0) * hadamard_power(0).col(0).adjoint())));
    LabeledOperator expected = tensor(
        tensor(
            outer(qubit_ket("A_I^1", 0, 0)),
            outer(choi_vector_of_unitary(Mat::Identity(2, 2), {"A_O^1", 2}, {"A_I^2", 2}))),
        identity_operator({{"A_O^2", 2}}));
    CHECK(pinned.max_abs_diff(expected) < 1e-12);
}

TEST_CASE("validation accepts the reference processes") {
    auto qs = validate_process(quantum_switch(), 25, 11);
    CHECK(qs.passed());
    CHECK(qs.max_probability_deviation < 1e-10);
    auto lug = validate_process(from_process_function(lugano_process()), 25, 12);
    CHECK(lug.passed());
    auto qcqc = validate_process(to_qcqc(lugano_process(), 2), 25, 13);
    CHECK(qcqc.passed());
}

TEST_CASE("validation accepts white noise and labels it necessary-only") {
    auto rep = validate_process(white_noise_switch_process(), 25, 14);
    CHECK(rep.passed());
    CHECK(std::string(ValidationReport::kCaveat).find("necessary") != std::string::npos);
}

TEST_CASE("validation is deterministic given the seed") {
    auto a = validate_process(quantum_switch(), 10, 7);
    auto b = validate_process(quantum_switch(), 10, 7);
    CHECK(a.max_probability_deviation == b.max_probability_deviation);
}

TEST_CASE("role bookkeeping on serial wires") {
    ProcessMatrix qs = quantum_switch();
    CHECK(qs.wires_of_kind(WireRoleKind::GlobalPast) == std::vector<std::string>{"P"});
    CHECK(qs.wires_of_kind(WireRoleKind::GlobalFuture) == std::vector<std::string>{"F"});
    CHECK(qs.party_indices().size() == 2);
    CHECK(qs.expected_trace() == 8.0);
}
