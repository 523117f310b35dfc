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

#include "procmat/process_matrix.hpp"

#include <random>

namespace procmat {

namespace {

constexpr int kMaxDenseWires = 12;

int word_bit(uint32_t word, int j, int n) {
    return (word >> (n - 1 - j)) & 1u;
}

}  // namespace

std::string wire_role_to_string(const WireRole &role) {
    switch (role.kind) {
        case WireRoleKind::PartyInput:
            return "party_input:" + std::to_string(role.party);
        case WireRoleKind::PartyOutput:
            return "party_output:" + std::to_string(role.party);
        case WireRoleKind::GlobalPast:
            return "global_past";
        case WireRoleKind::GlobalFuture:
            return "global_future";
        case WireRoleKind::TargetFuture:
            return "target_future";
    }
    return "?";
}

WireRole wire_role_from_string(const std::string &s) {
    if (s == "global_past") {
        return {WireRoleKind::GlobalPast, 0};
    }
    if (s == "global_future") {
        return {WireRoleKind::GlobalFuture, 0};
    }
    if (s == "target_future") {
        return {WireRoleKind::TargetFuture, 0};
    }
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        std::string head = s.substr(0, colon);
        int party = std::stoi(s.substr(colon + 1));
        if (head == "party_input") {
            return {WireRoleKind::PartyInput, party};
        }
        if (head == "party_output") {
            return {WireRoleKind::PartyOutput, party};
        }
    }
    throw Error(ErrorKind::ConfigError, "unknown wire role '" + s + "'");
}

ProcessMatrix::ProcessMatrix(LabeledOperator op, std::map<std::string, WireRole> roles)
    : dense_(std::move(op)), roles_(std::move(roles)) {
    check_roles();
}

ProcessMatrix::ProcessMatrix(LabeledKet pure, std::map<std::string, WireRole> roles)
    : pure_(std::move(pure)), roles_(std::move(roles)) {
    check_roles();
}

void ProcessMatrix::check_roles() const {
    const auto &sp = spaces();
    if (roles_.size() != sp.size()) {
        throw Error(ErrorKind::WireMismatch, "every wire needs exactly one role");
    }
    for (const auto &s : sp) {
        if (!roles_.count(s.name)) {
            throw Error(ErrorKind::WireMismatch, "wire '" + s.name + "' has no role");
        }
    }
}

const LabeledKet &ProcessMatrix::pure() const {
    if (!pure_) {
        throw Error(ErrorKind::Internal, "process matrix is not stored in pure form");
    }
    return *pure_;
}

const LabeledOperator &ProcessMatrix::op() const {
    if (!dense_) {
        if (pure_->wire_count() > kMaxDenseWires) {
            throw Error(
                ErrorKind::DimensionMismatch,
                "refusing to densify a pure process on more than 12 wires");
        }
        dense_ = outer(*pure_);
    }
    return *dense_;
}

const std::vector<SpaceLabel> &ProcessMatrix::spaces() const {
    return pure_ ? pure_->spaces() : dense_->spaces();
}

bool ProcessMatrix::has_wire(const std::string &name) const {
    return roles_.count(name) > 0;
}

double ProcessMatrix::trace() const {
    if (pure_) {
        return pure_->squared_norm();
    }
    return dense_->trace_real();
}

double ProcessMatrix::expected_trace() const {
    double t = 1.0;
    for (const auto &s : spaces()) {
        const auto &role = roles_.at(s.name);
        if (role.kind == WireRoleKind::PartyOutput || role.kind == WireRoleKind::GlobalPast) {
            t *= s.dim;
        }
    }
    return t;
}

std::vector<std::string> ProcessMatrix::wires_of_kind(WireRoleKind kind) const {
    std::vector<std::string> out;
    for (const auto &s : spaces()) {
        if (roles_.at(s.name).kind == kind) {
            out.push_back(s.name);
        }
    }
    return out;
}

std::vector<int> ProcessMatrix::party_indices() const {
    std::vector<int> parties;
    for (const auto &[name, role] : roles_) {
        if (role.kind == WireRoleKind::PartyInput) {
            parties.push_back(role.party);
        }
    }
    return parties;
}

std::string party_input_wire(int party) {
    return "A_I^" + std::to_string(party);
}

std::string party_output_wire(int party) {
    return "A_O^" + std::to_string(party);
}

namespace {

std::string past_wire(int party) {
    return "P^" + std::to_string(party);
}

std::string future_wire(int party) {
    return "F^" + std::to_string(party);
}

// Wire layout of the reversible extension:
// [P^1..P^N, F^1..F^N, A_I^1, A_O^1, ..., A_I^N, A_O^N].
std::vector<SpaceLabel> purified_spaces(int n) {
    std::vector<SpaceLabel> spaces;
    for (int j = 1; j <= n; ++j) {
        spaces.push_back({past_wire(j), 2});
    }
    for (int j = 1; j <= n; ++j) {
        spaces.push_back({future_wire(j), 2});
    }
    for (int j = 1; j <= n; ++j) {
        spaces.push_back({party_input_wire(j), 2});
        spaces.push_back({party_output_wire(j), 2});
    }
    return spaces;
}

}  // namespace

ProcessMatrix from_process_function(const BooleanProcessFunction &w) {
    if (!check_unique_fixed_point(w)) {
        throw Error(ErrorKind::InvalidProcessFunction, "process function violates the unique fixed point condition");
    }
    const int n = w.n_parties();
    std::vector<SpaceLabel> spaces;
    std::map<std::string, WireRole> roles;
    for (int j = 1; j <= n; ++j) {
        spaces.push_back({party_input_wire(j), 2});
        spaces.push_back({party_output_wire(j), 2});
        roles[party_input_wire(j)] = {WireRoleKind::PartyInput, j};
        roles[party_output_wire(j)] = {WireRoleKind::PartyOutput, j};
    }
    Eigen::Index side = 1ll << (2 * n);
    Mat m = Mat::Zero(side, side);
    for (uint32_t a = 0; a < (1u << n); ++a) {
        uint32_t x = w.evaluate_word(a);
        Eigen::Index idx = 0;
        for (int j = 0; j < n; ++j) {
            idx = idx * 4 + 2 * word_bit(x, j, n) + word_bit(a, j, n);
        }
        m(idx, idx) = 1.0;
    }
    return ProcessMatrix(LabeledOperator(std::move(spaces), std::move(m)), std::move(roles));
}

ProcessMatrix purify(const BooleanProcessFunction &w) {
    if (!check_unique_fixed_point(w)) {
        throw Error(ErrorKind::InvalidProcessFunction, "process function violates the unique fixed point condition");
    }
    const int n = w.n_parties();
    auto spaces = purified_spaces(n);
    Vec v = Vec::Zero(1ll << (4 * n));
    for (uint32_t a = 0; a < (1u << n); ++a) {
        uint32_t x = w.evaluate_word(a);
        for (uint32_t past = 0; past < (1u << n); ++past) {
            // Digits in the purified_spaces order.
            Eigen::Index idx = 0;
            for (int j = 0; j < n; ++j) {
                idx = idx * 2 + word_bit(past, j, n);
            }
            for (int j = 0; j < n; ++j) {
                idx = idx * 2 + word_bit(a, j, n);
            }
            for (int j = 0; j < n; ++j) {
                idx = idx * 2 + (word_bit(past, j, n) ^ word_bit(x, j, n));
                idx = idx * 2 + word_bit(a, j, n);
            }
            v(idx) = 1.0;
        }
    }
    std::map<std::string, WireRole> roles;
    for (int j = 1; j <= n; ++j) {
        roles[past_wire(j)] = {WireRoleKind::GlobalPast, 0};
        roles[future_wire(j)] = {WireRoleKind::GlobalFuture, 0};
        roles[party_input_wire(j)] = {WireRoleKind::PartyInput, j};
        roles[party_output_wire(j)] = {WireRoleKind::PartyOutput, j};
    }
    return ProcessMatrix(LabeledKet(std::move(spaces), std::move(v)), std::move(roles));
}

ProcessMatrix partial_purify(const BooleanProcessFunction &w, int party) {
    const int n = w.n_parties();
    if (party < 0 || party >= n) {
        throw Error(ErrorKind::LengthMismatch, "party index out of range");
    }
    ProcessMatrix rev = purify(w);
    // Pin every past wire to |0>.
    std::vector<SpaceLabel> past_spaces;
    for (int j = 1; j <= n; ++j) {
        past_spaces.push_back({past_wire(j), 2});
    }
    LabeledKet zeros = basis_ket(past_spaces, std::vector<int>(n, 0));
    LabeledKet pinned = ket_link(zeros, rev.pure());
    // Trace out the future wires of every other party.
    std::set<std::string> traced;
    for (int j = 1; j <= n; ++j) {
        if (j != party + 1) {
            traced.insert(future_wire(j));
        }
    }
    LabeledOperator dense = trace_outer(pinned, traced);
    dense.rename_space(future_wire(party + 1), "F");
    std::map<std::string, WireRole> roles;
    roles["F"] = {WireRoleKind::GlobalFuture, 0};
    for (int j = 1; j <= n; ++j) {
        roles[party_input_wire(j)] = {WireRoleKind::PartyInput, j};
        roles[party_output_wire(j)] = {WireRoleKind::PartyOutput, j};
    }
    return ProcessMatrix(std::move(dense), std::move(roles));
}

ProcessMatrix to_qcqc(const BooleanProcessFunction &w, int party) {
    if (!check_transparent_control(w, party)) {
        throw Error(ErrorKind::NotTransparent, "party does not satisfy the transparent control condition");
    }
    ProcessMatrix prev = partial_purify(w, party);
    // Feed a fresh global past wire P into the control party's output slot and
    // pull its input slot to the target future wire Ft.
    ChoiVector into = choi_vector_of_unitary(Mat::Identity(2, 2), {"P", 2}, {party_output_wire(party + 1), 2});
    ChoiVector outof = choi_vector_of_unitary(Mat::Identity(2, 2), {party_input_wire(party + 1), 2}, {"Ft", 2});
    LabeledOperator swap_links = outer(tensor(into, outof));
    LabeledOperator result = link_product(prev.op(), swap_links);
    std::map<std::string, WireRole> roles;
    roles["P"] = {WireRoleKind::GlobalPast, 0};
    roles["F"] = {WireRoleKind::GlobalFuture, 0};
    roles["Ft"] = {WireRoleKind::TargetFuture, 0};
    for (int j = 0; j < w.n_parties(); ++j) {
        if (j == party) {
            continue;
        }
        roles[party_input_wire(j + 1)] = {WireRoleKind::PartyInput, j + 1};
        roles[party_output_wire(j + 1)] = {WireRoleKind::PartyOutput, j + 1};
    }
    return ProcessMatrix(std::move(result), std::move(roles));
}

ProcessMatrix quantum_switch() {
    const Mat eye = Mat::Identity(2, 2);
    Mat flip(2, 2);
    flip << 0, 1, 1, 0;
    const std::string ai = party_input_wire(1), ao = party_output_wire(1);
    const std::string bi = party_input_wire(2), bo = party_output_wire(2);
    LabeledKet branch0 = tensor(
        tensor(tensor(qubit_ket("P", 0, 0), qubit_ket("F", 0, 0)), qubit_ket(ai, 0, 0)),
        tensor(
            choi_vector_of_unitary(eye, {ao, 2}, {bi, 2}),
            choi_vector_of_unitary(eye, {bo, 2}, {"Ft", 2})));
    LabeledKet branch1 = tensor(
        tensor(tensor(qubit_ket("P", 1, 0), qubit_ket("F", 1, 0)), qubit_ket(bi, 0, 0)),
        tensor(
            choi_vector_of_unitary(flip, {bo, 2}, {ai, 2}),
            choi_vector_of_unitary(flip, {ao, 2}, {"Ft", 2})));
    LabeledKet switch_ket = add(
        permute_spaces(branch0, {"P", "F", ai, ao, bi, bo, "Ft"}),
        permute_spaces(branch1, {"P", "F", ai, ao, bi, bo, "Ft"}));
    LabeledOperator dense = trace_outer(switch_ket, {"Ft"});
    std::map<std::string, WireRole> roles;
    roles["P"] = {WireRoleKind::GlobalPast, 0};
    roles["F"] = {WireRoleKind::GlobalFuture, 0};
    roles[ai] = {WireRoleKind::PartyInput, 1};
    roles[ao] = {WireRoleKind::PartyOutput, 1};
    roles[bi] = {WireRoleKind::PartyInput, 2};
    roles[bo] = {WireRoleKind::PartyOutput, 2};
    return ProcessMatrix(std::move(dense), std::move(roles));
}

ProcessMatrix white_noise_switch_process() {
    ProcessMatrix qs = quantum_switch();
    LabeledOperator eye = identity_operator(qs.spaces());
    eye.matrix() *= 8.0 / eye.matrix().rows();
    return ProcessMatrix(std::move(eye), qs.roles());
}

namespace {

Mat random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

// Choi matrix of the total (trace-preserving) map of a random instrument
// from `in` to `out`, built from a random Stinespring isometry.
LabeledOperator random_tp_choi(const std::string &in, const std::string &out, std::mt19937_64 &rng) {
    Mat u = random_unitary(4, rng);
    // Isometry V: |i> -> u * (|i> tensor |0>); Kraus K_k = <k|_env V.
    Mat k0(2, 2), k1(2, 2);
    for (int i = 0; i < 2; ++i) {
        // column of V for input i is u.col(2*i) since env starts in |0>.
        k0(0, i) = u(0, 2 * i);
        k0(1, i) = u(2, 2 * i);
        k1(0, i) = u(1, 2 * i);
        k1(1, i) = u(3, 2 * i);
    }
    Mat choi = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Mat eij = Mat::Zero(2, 2);
            eij(i, j) = 1.0;
            Mat block = k0 * eij * k0.adjoint() + k1 * eij * k1.adjoint();
            choi.block(2 * i, 2 * j, 2, 2) = block;
        }
    }
    return LabeledOperator({{in, 2}, {out, 2}}, std::move(choi));
}

}  // namespace

ValidationReport validate_process(const ProcessMatrix &w, int samples, unsigned seed) {
    if (samples < 1) {
        throw Error(ErrorKind::LengthMismatch, "need at least one sample");
    }
    ValidationReport report;
    report.samples = samples;
    report.seed = seed;
    const LabeledOperator &op = w.op();
    report.hermitian = op.is_hermitian(1e-9);
    report.min_eigenvalue = op.min_eigenvalue();
    report.psd = report.min_eigenvalue >= -1e-9;
    report.trace = w.trace();
    report.expected_trace = w.expected_trace();
    report.trace_ok = std::abs(report.trace - report.expected_trace) <= 1e-9;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto past = w.wires_of_kind(WireRoleKind::GlobalPast);
    auto future = w.wires_of_kind(WireRoleKind::GlobalFuture);
    auto target_future = w.wires_of_kind(WireRoleKind::TargetFuture);
    future.insert(future.end(), target_future.begin(), target_future.end());
    auto parties = w.party_indices();

    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        LabeledOperator acc = op;
        for (int party : parties) {
            acc = link_product(acc, random_tp_choi(party_input_wire(party), party_output_wire(party), rng));
        }
        for (const auto &p : past) {
            Vec state(2);
            state << complex(gauss(rng), gauss(rng)), complex(gauss(rng), gauss(rng));
            state.normalize();
            LabeledOperator prep({{p, 2}}, state * state.adjoint());
            acc = link_product(acc, prep);
        }
        if (!future.empty()) {
            std::set<std::string> names(future.begin(), future.end());
            acc = partial_trace(acc, names);
        }
        if (acc.side() != 1) {
            throw Error(ErrorKind::WireMismatch, "process has wires outside the declared roles");
        }
        worst = std::max(worst, std::abs(acc.matrix()(0, 0).real() - 1.0) + std::abs(acc.matrix()(0, 0).imag()));
    }
    report.max_probability_deviation = worst;
    return report;
}

}  // namespace procmat
