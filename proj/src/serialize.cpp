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

#include "procmat/serialize.hpp"

#include <fstream>

namespace procmat {

namespace {

void require_keys(const Json &j, std::initializer_list<const char *> keys, const char *what) {
    if (!j.is_object()) {
        throw Error(ErrorKind::ConfigError, std::string(what) + ": expected an object");
    }
    for (const char *k : keys) {
        if (!j.contains(k)) {
            throw Error(ErrorKind::ConfigError, std::string(what) + ": missing key '" + k + "'");
        }
    }
    for (const auto &[k, v] : j.items()) {
        bool known = false;
        for (const char *want : keys) {
            known = known || k == want;
        }
        if (!known) {
            throw Error(ErrorKind::ConfigError, std::string(what) + ": unknown key '" + k + "'");
        }
    }
}

Json spaces_to_json(const std::vector<SpaceLabel> &spaces) {
    Json arr = Json::array();
    for (const auto &s : spaces) {
        arr.push_back(Json{{"name", s.name}, {"dim", s.dim}});
    }
    return arr;
}

std::vector<SpaceLabel> spaces_from_json(const Json &arr) {
    if (!arr.is_array()) {
        throw Error(ErrorKind::ConfigError, "spaces: expected an array");
    }
    std::vector<SpaceLabel> spaces;
    for (const auto &e : arr) {
        require_keys(e, {"name", "dim"}, "space");
        spaces.push_back({e.at("name").get<std::string>(), e.at("dim").get<int>()});
    }
    return spaces;
}

Json entries_to_json(const Mat &m) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            arr.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
    }
    return arr;
}

Mat entries_from_json(const Json &arr, Eigen::Index side) {
    if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != side * side) {
        throw Error(ErrorKind::ConfigError, "entries: wrong length");
    }
    Mat m(side, side);
    Eigen::Index k = 0;
    for (const auto &e : arr) {
        if (!e.is_array() || e.size() != 2) {
            throw Error(ErrorKind::ConfigError, "entries: each entry must be [re, im]");
        }
        m(k / side, k % side) = complex(e[0].get<double>(), e[1].get<double>());
        ++k;
    }
    return m;
}

}  // namespace

Json to_json(const LabeledOperator &op) {
    return Json{{"spaces", spaces_to_json(op.spaces())}, {"entries", entries_to_json(op.matrix())}};
}

LabeledOperator labeled_operator_from_json(const Json &j) {
    require_keys(j, {"spaces", "entries"}, "operator");
    auto spaces = spaces_from_json(j.at("spaces"));
    Eigen::Index side = 1;
    for (const auto &s : spaces) {
        side *= s.dim;
    }
    return LabeledOperator(std::move(spaces), entries_from_json(j.at("entries"), side));
}

Json to_json(const ProcessMatrix &w) {
    Json j = to_json(w.op());
    Json roles = Json::object();
    for (const auto &s : w.spaces()) {
        roles[s.name] = wire_role_to_string(w.roles().at(s.name));
    }
    j["roles"] = std::move(roles);
    return j;
}

ProcessMatrix process_matrix_from_json(const Json &j) {
    require_keys(j, {"spaces", "entries", "roles"}, "process matrix");
    Json op_part = Json{{"spaces", j.at("spaces")}, {"entries", j.at("entries")}};
    LabeledOperator op = labeled_operator_from_json(op_part);
    std::map<std::string, WireRole> roles;
    for (const auto &[name, role] : j.at("roles").items()) {
        roles[name] = wire_role_from_string(role.get<std::string>());
    }
    return ProcessMatrix(std::move(op), std::move(roles));
}

Json to_json(const BooleanProcessFunction &w) {
    Json tables = Json::array();
    for (const auto &t : w.tables()) {
        Json row = Json::array();
        for (uint8_t v : t) {
            row.push_back(static_cast<int>(v));
        }
        tables.push_back(std::move(row));
    }
    return Json{{"n_parties", w.n_parties()}, {"tables", std::move(tables)}};
}

BooleanProcessFunction process_function_from_json(const Json &j) {
    require_keys(j, {"n_parties", "tables"}, "process function");
    int n = j.at("n_parties").get<int>();
    std::vector<std::vector<uint8_t>> tables;
    for (const auto &row : j.at("tables")) {
        std::vector<uint8_t> t;
        for (const auto &v : row) {
            t.push_back(static_cast<uint8_t>(v.get<int>()));
        }
        tables.push_back(std::move(t));
    }
    return BooleanProcessFunction(n, std::move(tables));
}

Json to_json(const DPOVM &d) {
    Json effects = Json::array();
    for (const auto &[word, op] : d.effects) {
        effects.push_back(Json{{"outcome", word}, {"operator", to_json(op)}});
    }
    return Json{{"wires", spaces_to_json(d.wires)}, {"effects", std::move(effects)}};
}

DPOVM dpovm_from_json(const Json &j) {
    require_keys(j, {"wires", "effects"}, "distributed measurement");
    DPOVM d;
    d.wires = spaces_from_json(j.at("wires"));
    for (const auto &e : j.at("effects")) {
        require_keys(e, {"outcome", "operator"}, "effect");
        OutcomeWord word = e.at("outcome").get<OutcomeWord>();
        d.effects.emplace_back(std::move(word), labeled_operator_from_json(e.at("operator")));
    }
    return d;
}

void save_json(const Json &j, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::ConfigError, "cannot open '" + path + "' for writing");
    }
    out << j.dump(1) << "\n";
}

Json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ConfigError, "cannot open '" + path + "'");
    }
    Json j;
    try {
        in >> j;
    } catch (const std::exception &e) {
        throw Error(ErrorKind::ConfigError, std::string("parse error: ") + e.what());
    }
    return j;
}

}  // namespace procmat
