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

#ifndef PROCMAT_SERIALIZE_HPP
#define PROCMAT_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "procmat/measurement.hpp"
#include "procmat/process_function.hpp"
#include "procmat/process_matrix.hpp"

namespace procmat {

using Json = nlohmann::ordered_json;

// Operators serialize as {"spaces": [{"name", "dim"}...],
// "entries": [[re, im], ...]} with entries row-major. Doubles round-trip
// bit-exactly. Readers reject unknown keys.

Json to_json(const LabeledOperator &op);
LabeledOperator labeled_operator_from_json(const Json &j);

Json to_json(const ProcessMatrix &w);  // operator fields plus a "roles" map
ProcessMatrix process_matrix_from_json(const Json &j);

Json to_json(const BooleanProcessFunction &w);
BooleanProcessFunction process_function_from_json(const Json &j);

Json to_json(const DPOVM &d);
DPOVM dpovm_from_json(const Json &j);

void save_json(const Json &j, const std::string &path);
Json load_json(const std::string &path);

}  // namespace procmat

#endif
