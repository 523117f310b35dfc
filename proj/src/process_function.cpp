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

#include "procmat/process_function.hpp"

#include <functional>

namespace procmat {

namespace {

// Bit j of a full output word, party 0 most significant.
int word_bit(uint32_t word, int party, int n) {
    return (word >> (n - 1 - party)) & 1u;
}

// Truth-table index for party i: the other parties' bits in ascending party
// order, first one most significant.
uint32_t table_index(uint32_t word, int party, int n) {
    uint32_t idx = 0;
    for (int j = 0; j < n; ++j) {
        if (j == party) {
            continue;
        }
        idx = (idx << 1) | static_cast<uint32_t>(word_bit(word, j, n));
    }
    return idx;
}

std::vector<std::vector<uint8_t>> tables_from_formula(
    int n, const std::function<int(int, const std::vector<int> &)> &input_of) {
    std::vector<std::vector<uint8_t>> tables(n, std::vector<uint8_t>(1u << (n - 1), 0));
    for (int party = 0; party < n; ++party) {
        for (uint32_t word = 0; word < (1u << n); ++word) {
            std::vector<int> bits(n);
            for (int j = 0; j < n; ++j) {
                bits[j] = word_bit(word, j, n);
            }
            tables[party][table_index(word, party, n)] = static_cast<uint8_t>(input_of(party, bits));
        }
    }
    return tables;
}

}  // namespace

BooleanProcessFunction::BooleanProcessFunction(int n_parties, std::vector<std::vector<uint8_t>> tables)
    : n_(n_parties), tables_(std::move(tables)) {
    if (n_ < 2) {
        throw Error(ErrorKind::InvalidProcessFunction, "a process function needs at least 2 parties");
    }
    if (tables_.size() != static_cast<size_t>(n_)) {
        throw Error(ErrorKind::LengthMismatch, "need one truth table per party");
    }
    for (const auto &t : tables_) {
        if (t.size() != (1u << (n_ - 1))) {
            throw Error(ErrorKind::LengthMismatch, "truth table has wrong length");
        }
        for (uint8_t v : t) {
            if (v > 1) {
                throw Error(ErrorKind::InvalidProcessFunction, "truth table entries must be bits");
            }
        }
    }
}

int BooleanProcessFunction::input_of_word(int party, uint32_t outputs_word) const {
    return tables_[party][table_index(outputs_word, party, n_)];
}

int BooleanProcessFunction::input_of(int party, const std::vector<int> &outputs) const {
    if (outputs.size() != static_cast<size_t>(n_)) {
        throw Error(ErrorKind::LengthMismatch, "output word length must equal the party count");
    }
    uint32_t word = 0;
    for (int j = 0; j < n_; ++j) {
        word = (word << 1) | static_cast<uint32_t>(outputs[j] & 1);
    }
    return input_of_word(party, word);
}

uint32_t BooleanProcessFunction::evaluate_word(uint32_t outputs_word) const {
    uint32_t inputs = 0;
    for (int j = 0; j < n_; ++j) {
        inputs = (inputs << 1) | static_cast<uint32_t>(input_of_word(j, outputs_word));
    }
    return inputs;
}

std::vector<int> BooleanProcessFunction::evaluate(const std::vector<int> &outputs) const {
    if (outputs.size() != static_cast<size_t>(n_)) {
        throw Error(ErrorKind::LengthMismatch, "output word length must equal the party count");
    }
    std::vector<int> inputs(n_);
    for (int j = 0; j < n_; ++j) {
        inputs[j] = input_of(j, outputs);
    }
    return inputs;
}

std::string BooleanProcessFunction::party_wire_name(int party, int n_parties) {
    static const char letters[] = {'A', 'B', 'C', 'D'};
    if (n_parties <= 4) {
        return std::string(1, letters[party]);
    }
    return "A^" + std::to_string(party + 1);
}

bool check_unique_fixed_point(const BooleanProcessFunction &w) {
    const int n = w.n_parties();
    const uint32_t words = 1u << n;
    const uint32_t maps = 1u << (2 * n);  // each party: f_i encoded as (f_i(0), f_i(1))
    for (uint32_t m = 0; m < maps; ++m) {
        int fixed = 0;
        for (uint32_t a = 0; a < words; ++a) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                int x = w.input_of_word(i, a);
                int fi = (m >> (2 * i + x)) & 1u;
                ok = fi == ((a >> (n - 1 - i)) & 1u);
            }
            fixed += ok ? 1 : 0;
            if (fixed > 1) {
                break;
            }
        }
        if (fixed != 1) {
            return false;
        }
    }
    return true;
}

bool check_no_global_past(const BooleanProcessFunction &w) {
    const int n = w.n_parties();
    for (int i = 0; i < n; ++i) {
        bool depends = false;
        for (uint32_t idx = 0; idx < (1u << (n - 1)) && !depends; ++idx) {
            depends = w.tables()[i][idx] != w.tables()[i][0];
        }
        if (!depends) {
            return false;
        }
    }
    return true;
}

bool check_transparent_control(const BooleanProcessFunction &w, int party) {
    const int n = w.n_parties();
    if (party < 0 || party >= n) {
        throw Error(ErrorKind::LengthMismatch, "party index out of range");
    }
    const uint32_t words = 1u << n;
    const uint32_t flip = 1u << (n - 1 - party);
    for (uint32_t a = 0; a < words; ++a) {
        if ((a & flip) != 0) {
            continue;  // enumerate each a_{\i} once, via a_i = 0
        }
        if (w.input_of_word(party, a) != 1) {
            continue;
        }
        for (int j = 0; j < n; ++j) {
            if (j == party) {
                continue;
            }
            if (w.input_of_word(j, a) != w.input_of_word(j, a | flip)) {
                return false;
            }
        }
    }
    return true;
}

NlweBasis nlwe_basis(const BooleanProcessFunction &w) {
    if (!check_no_global_past(w)) {
        throw Error(ErrorKind::HasGlobalPast, "process function has a global past");
    }
    const int n = w.n_parties();
    NlweBasis basis;
    for (int j = 0; j < n; ++j) {
        basis.wires.push_back({BooleanProcessFunction::party_wire_name(j, n), 2});
    }
    for (uint32_t a = 0; a < (1u << n); ++a) {
        std::vector<int> label(n);
        LabeledKet state;
        for (int j = 0; j < n; ++j) {
            label[j] = (a >> (n - 1 - j)) & 1u;
            LabeledKet factor = qubit_ket(basis.wires[j].name, label[j], w.input_of_word(j, a));
            state = j == 0 ? factor : tensor(state, factor);
        }
        basis.states.emplace_back(std::move(label), std::move(state));
    }
    return basis;
}

BooleanProcessFunction lugano_process() {
    // x = c(b+1), y = a(c+1), z = b(a+1) over GF(2).
    return BooleanProcessFunction(
        3, tables_from_formula(3, [](int party, const std::vector<int> &o) {
            int a = o[0], b = o[1], c = o[2];
            switch (party) {
                case 0:
                    return c & (b ^ 1);
                case 1:
                    return a & (c ^ 1);
                default:
                    return b & (a ^ 1);
            }
        }));
}

BooleanProcessFunction agb4_process() {
    return BooleanProcessFunction(
        4, tables_from_formula(4, [](int party, const std::vector<int> &o) {
            int a = o[0], b = o[1], c = o[2], d = o[3];
            switch (party) {
                case 0:
                    return d & (b ^ 1) & (c ^ 1);
                case 1:
                    return a & (c ^ 1) & (d ^ 1);
                case 2:
                    return b & (d ^ 1) & (a ^ 1);
                default:
                    return c & (a ^ 1) & (b ^ 1);
            }
        }));
}

BooleanProcessFunction ardehali_svetlichny4_process() {
    return BooleanProcessFunction(
        4, tables_from_formula(4, [](int party, const std::vector<int> &o) {
            int a = o[0], b = o[1], c = o[2], d = o[3];
            switch (party) {
                case 0:
                    return (b & c) ^ (c & d) ^ (b & d) ^ c;
                case 1:
                    return (a & c) ^ (c & d) ^ (a & d) ^ a ^ d;
                case 2:
                    return (a & b) ^ (b & d) ^ (a & d) ^ b;
                default:
                    return (a & b) ^ (b & c) ^ (a & c) ^ a ^ c;
            }
        }));
}

BooleanProcessFunction tobar_costa4_process() {
    return BooleanProcessFunction(
        4, tables_from_formula(4, [](int party, const std::vector<int> &o) {
            int a = o[0], b = o[1], c = o[2], d = o[3];
            switch (party) {
                case 0:
                    return b & (c ^ d);
                case 1:
                    return c & ((d & (a ^ 1)) ^ 1);
                case 2:
                    return d & (a ^ 1) & (b ^ 1);
                default:
                    return a & (b ^ 1) & (c ^ 1);
            }
        }));
}

BooleanProcessFunction constant_process(int n_parties) {
    return BooleanProcessFunction(
        n_parties, std::vector<std::vector<uint8_t>>(n_parties, std::vector<uint8_t>(1u << (n_parties - 1), 0)));
}

BooleanProcessFunction builtin_process(const std::string &name) {
    if (name == "lugano") {
        return lugano_process();
    }
    if (name == "agb4") {
        return agb4_process();
    }
    if (name == "ardehali_svetlichny4") {
        return ardehali_svetlichny4_process();
    }
    if (name == "tobar_costa4") {
        return tobar_costa4_process();
    }
    throw Error(ErrorKind::UnknownScenario, "unknown process function '" + name + "'");
}

std::vector<std::string> builtin_process_names() {
    return {"lugano", "agb4", "ardehali_svetlichny4", "tobar_costa4"};
}

}  // namespace procmat
