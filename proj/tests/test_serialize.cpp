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

#include <cstdio>
#include <random>

#include "procmat/serialize.hpp"

using namespace procmat;

TEST_CASE("operator round trip is bit exact") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            // Scatter the exponents to exercise the serializer.
            double scale = std::ldexp(1.0, (i * 4 + j) % 40 - 20);
            m(i, j) = complex(gauss(rng) * scale, gauss(rng) / scale);
        }
    }
    m(0, 0) = complex(1.0 / 3.0, -0.0);
    LabeledOperator op({{"X", 2}, {"Y", 2}}, m);
    Json j = to_json(op);
    std::string text = j.dump();
    LabeledOperator back = labeled_operator_from_json(Json::parse(text));
    CHECK(back.spaces().size() == 2);
    CHECK(back.spaces()[0].name == "X");
    for (int i = 0; i < 4; ++i) {
        for (int c = 0; c < 4; ++c) {
            CHECK(back.matrix()(i, c).real() == op.matrix()(i, c).real());
            CHECK(back.matrix()(i, c).imag() == op.matrix()(i, c).imag());
        }
    }
}

TEST_CASE("process matrix round trip keeps roles") {
    ProcessMatrix qs = quantum_switch();
    Json j = to_json(qs);
    ProcessMatrix back = process_matrix_from_json(j);
    CHECK(back.op().max_abs_diff(qs.op()) == 0.0);
    CHECK(back.roles().at("P").kind == WireRoleKind::GlobalPast);
    CHECK(back.roles().at("A_I^2").party == 2);
    CHECK(back.expected_trace() == 8.0);
}

TEST_CASE("process function round trip") {
    BooleanProcessFunction w = tobar_costa4_process();
    Json j = to_json(w);
    BooleanProcessFunction back = process_function_from_json(j);
    CHECK(back.n_parties() == 4);
    CHECK(back.tables() == w.tables());
}

TEST_CASE("distributed measurement round trip") {
    DPOVM d = shift_closed_form();
    Json j = to_json(d);
    DPOVM back = dpovm_from_json(j);
    CHECK(back.effects.size() == 8);
    for (const auto &[word, effect] : d.effects) {
        CHECK(back.effect(word).max_abs_diff(effect) == 0.0);
    }
}

TEST_CASE("unknown keys are rejected") {
    Json j = to_json(shift_closed_form());
    j["extra"] = 1;
    CHECK_THROWS_AS(dpovm_from_json(j), Error);
    Json op = to_json(quantum_switch());
    op["comment"] = "nope";
    CHECK_THROWS_AS(process_matrix_from_json(op), Error);
}

TEST_CASE("missing keys are rejected") {
    Json j = Json{{"spaces", Json::array()}};
    CHECK_THROWS_AS(labeled_operator_from_json(j), Error);
}

TEST_CASE("file round trip") {
    std::string path = "procmat_test_roundtrip.json";
    ProcessMatrix qs = quantum_switch();
    save_json(to_json(qs), path);
    Json j = load_json(path);
    ProcessMatrix back = process_matrix_from_json(j);
    CHECK(back.op().max_abs_diff(qs.op()) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("load reports parse errors as config errors") {
    std::string path = "procmat_test_bad.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_json(path), Error);
    std::remove(path.c_str());
}
