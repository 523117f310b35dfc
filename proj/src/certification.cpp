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

#include "procmat/certification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace procmat {

namespace {

Mat qubit_state_projector(int bit, int hadamard) {
    Vec v = hadamard_power(hadamard).col(bit);
    return v * v.adjoint();
}

Vec qubit_state(int bit, int hadamard) {
    return hadamard_power(hadamard).col(bit);
}

}  // namespace

GameScenario game_scenario_from_string(const std::string &name) {
    if (name == "lugano" || name == "lugano_di") {
        return GameScenario::LuganoDi;
    }
    if (name == "shift" || name == "shift_sdiqi") {
        return GameScenario::ShiftSdiqi;
    }
    if (name == "ndi") {
        return GameScenario::Ndi;
    }
    throw Error(ErrorKind::UnknownScenario, "unknown game scenario '" + name + "'");
}

OutcomeRelabel identity_relabel(int n) {
    OutcomeRelabel r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = i;
    }
    return r;
}

double discrimination_value(const DPOVM &d, const InputEnsemble &e, const OutcomeRelabel &relabel) {
    if (d.wires.size() != e.wires.size() || relabel.size() != d.wires.size()) {
        throw Error(ErrorKind::WireMismatch, "measurement, ensemble and relabel must agree on the wire count");
    }
    double value = 0;
    for (size_t k = 0; k < e.states.size(); ++k) {
        const auto &label = e.states[k].first;
        OutcomeWord word(relabel.size());
        std::vector<std::string> source_order(relabel.size());
        for (size_t i = 0; i < relabel.size(); ++i) {
            word[i] = label[relabel[i]];
            source_order[i] = e.wires[relabel[i]].name;
        }
        LabeledKet routed = permute_spaces(e.states[k].second, source_order);
        LabeledOperator effect = d.effect(word);
        // Route the state factors onto the measurement wires positionally.
        LabeledKet on_wires(effect.spaces(), routed.vector());
        LabeledOperator aligned = permute_spaces(effect, on_wires.space_names());
        complex p = (on_wires.vector().adjoint() * aligned.matrix() * on_wires.vector())(0, 0);
        value += e.prior[k] * p.real();
    }
    return value;
}

double lugano_game_value(const BooleanProcessFunction &w) {
    // The process delivers exactly the inputs the win condition asks for.
    const int n = w.n_parties();
    long long wins = 0;
    for (uint32_t a = 0; a < (1u << n); ++a) {
        wins += w.evaluate_word(a) == w.evaluate_word(a) ? 1 : 0;
    }
    return static_cast<double>(wins) / static_cast<double>(1u << n);
}

Rational lugano_game_value(const BooleanProcessFunction &w, const CausalStrategyTree &tree) {
    return strategy_game_value(w, tree);
}

double lugano_game_value(const ProcessMatrix &process) {
    BooleanProcessFunction w = lugano_process();
    const int n = w.n_parties();
    for (int j = 1; j <= n; ++j) {
        if (!process.has_wire(party_input_wire(j)) || !process.has_wire(party_output_wire(j))) {
            throw Error(ErrorKind::ScenarioMismatch, "process does not expose three party wire pairs");
        }
    }
    if (process.spaces().size() != static_cast<size_t>(2 * n)) {
        throw Error(ErrorKind::ScenarioMismatch, "the guessing game needs a party-wires-only process");
    }
    double value = 0;
    for (uint32_t a = 0; a < (1u << n); ++a) {
        uint32_t x = w.evaluate_word(a);
        LabeledOperator acc = process.op();
        for (int j = 0; j < n; ++j) {
            int aj = (a >> (n - 1 - j)) & 1u;
            int xj = (x >> (n - 1 - j)) & 1u;
            LabeledOperator element = tensor(
                LabeledOperator({{party_input_wire(j + 1), 2}}, qubit_state_projector(xj, 0)),
                LabeledOperator({{party_output_wire(j + 1), 2}}, qubit_state_projector(aj, 0)));
            acc = link_product(acc, element);
        }
        value += acc.matrix()(0, 0).real();
    }
    return value / static_cast<double>(1u << n);
}

double ndi_game_value(const ProcessMatrix &w) {
    for (const char *wire : {"P", "F"}) {
        if (!w.has_wire(wire)) {
            throw Error(ErrorKind::WireMismatch, std::string("process lacks wire ") + wire);
        }
    }
    for (int j = 1; j <= 2; ++j) {
        if (!w.has_wire(party_input_wire(j)) || !w.has_wire(party_output_wire(j))) {
            throw Error(ErrorKind::WireMismatch, "process lacks the two party wire pairs");
        }
    }
    const bool has_target = w.has_wire("Ft");
    double value = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int gamma = 0; gamma < 2; ++gamma) {
                const int x_t = gamma & (b ^ 1);
                const int y_t = a & (gamma ^ 1);
                const int z_t = b & (a ^ 1);
                LabeledOperator acc = link_product(
                    w.op(), LabeledOperator({{"P", 2}}, qubit_state_projector(gamma, z_t)));
                acc = link_product(
                    acc, tensor(
                             LabeledOperator({{party_input_wire(1), 2}}, qubit_state_projector(x_t, 0)),
                             LabeledOperator({{party_output_wire(1), 2}}, qubit_state_projector(a, 0))));
                acc = link_product(
                    acc, tensor(
                             LabeledOperator({{party_input_wire(2), 2}}, qubit_state_projector(y_t, 0)),
                             LabeledOperator({{party_output_wire(2), 2}}, qubit_state_projector(b, 0))));
                LabeledOperator fiona({{"F", 2}}, qubit_state_projector(gamma, z_t));
                if (has_target) {
                    fiona = tensor(fiona, LabeledOperator({{"Ft", 2}}, qubit_state_projector(z_t, 0)));
                }
                acc = link_product(acc, fiona);
                value += acc.matrix()(0, 0).real();
            }
        }
    }
    return value / 8.0;
}

// --- causal separability feasibility, (P+2+F) scenario ---

namespace {

struct P2fProblem {
    ConstraintSet cs;
    int ab_base = 0, ba_base = 8, ea_base = 16, eb_base = 18, pa = 20, pb = 21;
    int slack = -1;
};

int p2f_word(int f, int a, int b) {
    return (f << 2) | (a << 1) | b;
}

WireMapTerm identity_term(int block, int wires, double coeff) {
    WireMapTerm t;
    t.block = block;
    t.coeff = coeff;
    t.block_dims.assign(wires, 2);
    t.eq_from_block.resize(wires);
    for (int k = 0; k < wires; ++k) {
        t.eq_from_block[k] = k;
    }
    return t;
}

// Builds the chain constraints of the two-branch decomposition. When `data`
// is non-null its effects pin the branch sums; when `objective` is non-null a
// scalar row fixes (objective value - slack) = target.
P2fProblem build_p2f(const DPOVM *data, const std::vector<std::pair<OutcomeWord, Mat>> *objective, double target) {
    P2fProblem p;
    auto &cs = p.cs;
    for (const char *branch : {"seq(P,A,B)", "seq(P,B,A)"}) {
        for (int word = 0; word < 8; ++word) {
            cs.blocks.push_back({std::string(branch) + ":" + std::to_string(word), 8, 8.0});
        }
    }
    for (int a = 0; a < 2; ++a) {
        cs.blocks.push_back({"margin(P,A):" + std::to_string(a), 4, 4.0});
    }
    for (int b = 0; b < 2; ++b) {
        cs.blocks.push_back({"margin(P,B):" + std::to_string(b), 4, 4.0});
    }
    cs.blocks.push_back({"first(A)", 2, 2.0});
    cs.blocks.push_back({"first(B)", 2, 2.0});
    if (objective != nullptr) {
        p.slack = static_cast<int>(cs.blocks.size());
        cs.blocks.push_back({"objective_slack", 1, 2.0});
    }

    if (data != nullptr) {
        for (int f = 0; f < 2; ++f) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    Equation eq;
                    eq.name = "sum of branches at (" + std::to_string(f) + "," + std::to_string(a) + "," +
                              std::to_string(b) + ")";
                    eq.eq_dims = {2, 2, 2};
                    int word = p2f_word(f, a, b);
                    eq.wire_terms.push_back(identity_term(p.ab_base + word, 3, 1.0));
                    eq.wire_terms.push_back(identity_term(p.ba_base + word, 3, 1.0));
                    LabeledOperator aligned = permute_spaces(data->effect({f, a, b}), {"P", "A", "B"});
                    eq.rhs = aligned.matrix();
                    cs.equations.push_back(std::move(eq));
                }
            }
        }
    }

    // Branch P<A<B: summing the final outcome and Bob's outcome must leave
    // identity on B; summing Alice then leaves identity on A; the two
    // first-slot operators tile the identity on P.
    for (int a = 0; a < 2; ++a) {
        Equation eq;
        eq.name = "branch(P,A,B) marginal at a=" + std::to_string(a);
        eq.eq_dims = {2, 2, 2};
        for (int f = 0; f < 2; ++f) {
            for (int b = 0; b < 2; ++b) {
                eq.wire_terms.push_back(identity_term(p.ab_base + p2f_word(f, a, b), 3, 1.0));
            }
        }
        WireMapTerm em;
        em.block = p.ea_base + a;
        em.coeff = -1.0;
        em.block_dims = {2, 2};
        em.eq_from_block = {0, 1, -1};
        eq.wire_terms.push_back(em);
        eq.rhs = Mat::Zero(8, 8);
        cs.equations.push_back(std::move(eq));
    }
    {
        Equation eq;
        eq.name = "branch(P,A,B) first-slot closure";
        eq.eq_dims = {2, 2};
        for (int a = 0; a < 2; ++a) {
            eq.wire_terms.push_back(identity_term(p.ea_base + a, 2, 1.0));
        }
        WireMapTerm em;
        em.block = p.pa;
        em.coeff = -1.0;
        em.block_dims = {2};
        em.eq_from_block = {0, -1};
        eq.wire_terms.push_back(em);
        eq.rhs = Mat::Zero(4, 4);
        cs.equations.push_back(std::move(eq));
    }
    for (int b = 0; b < 2; ++b) {
        Equation eq;
        eq.name = "branch(P,B,A) marginal at b=" + std::to_string(b);
        eq.eq_dims = {2, 2, 2};
        for (int f = 0; f < 2; ++f) {
            for (int a = 0; a < 2; ++a) {
                eq.wire_terms.push_back(identity_term(p.ba_base + p2f_word(f, a, b), 3, 1.0));
            }
        }
        WireMapTerm em;
        em.block = p.eb_base + b;
        em.coeff = -1.0;
        em.block_dims = {2, 2};
        em.eq_from_block = {0, -1, 1};
        eq.wire_terms.push_back(em);
        eq.rhs = Mat::Zero(8, 8);
        cs.equations.push_back(std::move(eq));
    }
    {
        Equation eq;
        eq.name = "branch(P,B,A) first-slot closure";
        eq.eq_dims = {2, 2};
        for (int b = 0; b < 2; ++b) {
            eq.wire_terms.push_back(identity_term(p.eb_base + b, 2, 1.0));
        }
        WireMapTerm em;
        em.block = p.pb;
        em.coeff = -1.0;
        em.block_dims = {2};
        em.eq_from_block = {0, -1};
        eq.wire_terms.push_back(em);
        eq.rhs = Mat::Zero(4, 4);
        cs.equations.push_back(std::move(eq));
    }
    {
        Equation eq;
        eq.name = "first-slot operators tile the identity";
        eq.eq_dims = {2};
        eq.wire_terms.push_back(identity_term(p.pa, 1, 1.0));
        eq.wire_terms.push_back(identity_term(p.pb, 1, 1.0));
        eq.rhs = Mat::Identity(2, 2);
        cs.equations.push_back(std::move(eq));
    }

    if (objective != nullptr) {
        Equation eq;
        eq.name = "objective minus slack";
        eq.eq_dims = {};
        for (const auto &[word, g] : *objective) {
            int idx = p2f_word(word[0], word[1], word[2]);
            TraceTerm t0;
            t0.block = p.ab_base + idx;
            t0.coeff = 1.0;
            t0.g = g;
            eq.trace_terms.push_back(t0);
            TraceTerm t1 = t0;
            t1.block = p.ba_base + idx;
            eq.trace_terms.push_back(t1);
        }
        WireMapTerm slack;
        slack.block = p.slack;
        slack.coeff = -1.0;
        eq.wire_terms.push_back(slack);
        eq.rhs = Mat::Constant(1, 1, target);
        cs.equations.push_back(std::move(eq));
    }
    return p;
}

void check_p2f_dpovm(const DPOVM &d) {
    if (d.wires.size() != 3 || d.effects.size() != 8) {
        throw Error(ErrorKind::WireMismatch, "expected a three-wire measurement with 8 outcome words");
    }
    for (const auto &s : d.wires) {
        if (s.dim != 2) {
            throw Error(ErrorKind::WireMismatch, "expected qubit wires");
        }
    }
}

SdpResult wrap_outcome(const ConstraintSet &cs, const FeasibilityOutcome &out) {
    SdpResult r;
    r.status = out.status;
    r.residual = out.residual;
    r.iterations = out.iterations;
    r.witness_margin = out.witness_margin;
    r.witness_value = out.witness_value;
    if (out.status == SolverStatus::Feasible) {
        for (size_t k = 0; k < cs.blocks.size(); ++k) {
            r.decomposition.emplace_back(cs.blocks[k].name, out.point.blocks[k]);
        }
        r.residual = verify_decomposition(cs, out.point);
    }
    std::ostringstream detail;
    detail << solver_status_name(out.status) << " after " << out.iterations << " iterations";
    if (out.status == SolverStatus::Infeasible) {
        detail << "; witness margin " << out.witness_margin;
    }
    r.detail = detail.str();
    return r;
}

}  // namespace

SdpResult causal_sep_feasibility_p2f(const DPOVM &d, double feas_tol) {
    check_p2f_dpovm(d);
    // Accept any wire names; positions map to (P, A, B).
    std::vector<std::string> order;
    for (const auto &s : d.wires) {
        order.push_back(s.name);
    }
    DPOVM aligned;
    aligned.wires = {{"P", 2}, {"A", 2}, {"B", 2}};
    for (const auto &[word, effect] : d.effects) {
        LabeledOperator pos = permute_spaces(effect, order);
        aligned.effects.emplace_back(word, LabeledOperator(aligned.wires, pos.matrix()));
    }
    P2fProblem p = build_p2f(&aligned, nullptr, 0.0);
    FeasibilityOptions opt;
    opt.feas_tol = feas_tol;
    FeasibilityOutcome out = solve_feasibility(p.cs, opt);
    return wrap_outcome(p.cs, out);
}

// --- causal separability feasibility, tripartite scenario ---

namespace {

struct TriProblem {
    ConstraintSet cs;
    std::array<std::array<int, 3>, 6> perms;
    std::vector<int> full_base;      // per perm: base of the 8 word blocks
    std::vector<int> pair_base;      // per perm: base of the 4 (x,y) marginals
    std::vector<int> first_base;     // per perm: base of the 2 first-slot blocks
    std::array<int, 3> lambda_index; // per first party
};

TriProblem build_tripartite(const DPOVM &data) {
    TriProblem p;
    p.perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    auto &cs = p.cs;
    auto perm_name = [&](int k) {
        const auto &pm = p.perms[k];
        return std::string("seq(") + std::to_string(pm[0]) + "," + std::to_string(pm[1]) + "," +
               std::to_string(pm[2]) + ")";
    };
    for (int k = 0; k < 6; ++k) {
        p.full_base.push_back(static_cast<int>(cs.blocks.size()));
        for (int word = 0; word < 8; ++word) {
            cs.blocks.push_back({perm_name(k) + ":" + std::to_string(word), 8, 8.0});
        }
    }
    for (int k = 0; k < 6; ++k) {
        p.pair_base.push_back(static_cast<int>(cs.blocks.size()));
        for (int xy = 0; xy < 4; ++xy) {
            cs.blocks.push_back({perm_name(k) + ":pair" + std::to_string(xy), 4, 4.0});
        }
    }
    for (int k = 0; k < 6; ++k) {
        p.first_base.push_back(static_cast<int>(cs.blocks.size()));
        for (int x = 0; x < 2; ++x) {
            cs.blocks.push_back({perm_name(k) + ":first" + std::to_string(x), 2, 2.0});
        }
    }
    for (int x = 0; x < 3; ++x) {
        p.lambda_index[x] = static_cast<int>(cs.blocks.size());
        cs.blocks.push_back({"weight(" + std::to_string(x) + ")", 1, 1.0});
    }

    std::vector<std::string> wire_order;
    for (const auto &s : data.wires) {
        wire_order.push_back(s.name);
    }
    for (int word = 0; word < 8; ++word) {
        Equation eq;
        eq.name = "sum of sequences at word " + std::to_string(word);
        eq.eq_dims = {2, 2, 2};
        for (int k = 0; k < 6; ++k) {
            eq.wire_terms.push_back(identity_term(p.full_base[k] + word, 3, 1.0));
        }
        OutcomeWord w = {(word >> 2) & 1, (word >> 1) & 1, word & 1};
        LabeledOperator aligned = permute_spaces(data.effect(w), wire_order);
        eq.rhs = aligned.matrix();
        cs.equations.push_back(std::move(eq));
    }
    for (int k = 0; k < 6; ++k) {
        const auto &pm = p.perms[k];
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                Equation eq;
                eq.name = "last-slot closure " + std::to_string(k) + ":" + std::to_string(2 * x + y);
                eq.eq_dims = {2, 2, 2};
                for (int z = 0; z < 2; ++z) {
                    int word = (x << (2 - pm[0])) | (y << (2 - pm[1])) | (z << (2 - pm[2]));
                    eq.wire_terms.push_back(identity_term(p.full_base[k] + word, 3, 1.0));
                }
                WireMapTerm em;
                em.block = p.pair_base[k] + 2 * x + y;
                em.coeff = -1.0;
                em.block_dims = {2, 2};
                em.eq_from_block = {-1, -1, -1};
                em.eq_from_block[pm[0]] = 0;
                em.eq_from_block[pm[1]] = 1;
                eq.wire_terms.push_back(em);
                eq.rhs = Mat::Zero(8, 8);
                cs.equations.push_back(std::move(eq));
            }
        }
        for (int x = 0; x < 2; ++x) {
            Equation eq;
            eq.name = "middle-slot closure " + std::to_string(k) + ":" + std::to_string(x);
            eq.eq_dims = {2, 2};
            for (int y = 0; y < 2; ++y) {
                eq.wire_terms.push_back(identity_term(p.pair_base[k] + 2 * x + y, 2, 1.0));
            }
            WireMapTerm em;
            em.block = p.first_base[k] + x;
            em.coeff = -1.0;
            em.block_dims = {2};
            em.eq_from_block = {0, -1};
            eq.wire_terms.push_back(em);
            eq.rhs = Mat::Zero(4, 4);
            cs.equations.push_back(std::move(eq));
        }
    }
    for (int first = 0; first < 3; ++first) {
        Equation eq;
        eq.name = "first-party closure " + std::to_string(first);
        eq.eq_dims = {2};
        for (int k = 0; k < 6; ++k) {
            if (p.perms[k][0] != first) {
                continue;
            }
            for (int x = 0; x < 2; ++x) {
                eq.wire_terms.push_back(identity_term(p.first_base[k] + x, 1, 1.0));
            }
        }
        WireMapTerm lam;
        lam.block = p.lambda_index[first];
        lam.coeff = -1.0;
        lam.eq_from_block = {-1};
        eq.wire_terms.push_back(lam);
        eq.rhs = Mat::Zero(2, 2);
        cs.equations.push_back(std::move(eq));
    }
    {
        Equation eq;
        eq.name = "weights sum to one";
        eq.eq_dims = {};
        for (int first = 0; first < 3; ++first) {
            WireMapTerm lam;
            lam.block = p.lambda_index[first];
            lam.coeff = 1.0;
            eq.wire_terms.push_back(lam);
        }
        eq.rhs = Mat::Constant(1, 1, 1.0);
        cs.equations.push_back(std::move(eq));
    }
    return p;
}

}  // namespace

SdpResult causal_sep_feasibility_tripartite(const DPOVM &d, double feas_tol) {
    if (d.wires.size() != 3 || d.effects.size() != 8) {
        throw Error(ErrorKind::WireMismatch, "expected a three-wire measurement with 8 outcome words");
    }
    TriProblem p = build_tripartite(d);
    FeasibilityOptions opt;
    opt.feas_tol = feas_tol;
    FeasibilityOutcome out = solve_feasibility(p.cs, opt);
    return wrap_outcome(p.cs, out);
}

ThresholdResult mixing_threshold_p2f(const DPOVM &d, const DPOVM &noise, int probes) {
    ThresholdResult r;
    r.feasible_below = 0.0;
    r.infeasible_above = 1.0;
    // Single projector shared across probes: the constraint structure does
    // not depend on the mixing weight, only the right-hand sides do.
    auto mix = [&](double lambda) {
        DPOVM m = d;
        for (size_t k = 0; k < m.effects.size(); ++k) {
            LabeledOperator aligned =
                permute_spaces(noise.effect(m.effects[k].first), m.effects[k].second.space_names());
            m.effects[k].second.matrix() =
                lambda * m.effects[k].second.matrix() + (1 - lambda) * aligned.matrix();
        }
        return m;
    };
    DPOVM half = mix(0.5);
    P2fProblem base = build_p2f(&half, nullptr, 0.0);
    AffineProjector projector(base.cs);
    FeasibilityOptions opt;
    opt.max_iterations = 12000;
    opt.witness_iterations = 3000;
    for (int probe = 0; probe < probes; ++probe) {
        double lambda = (r.feasible_below + r.infeasible_above) / 2;
        DPOVM mixed = mix(lambda);
        P2fProblem p = build_p2f(&mixed, nullptr, 0.0);
        FeasibilityOutcome out = solve_feasibility(p.cs, opt, &projector);
        ++r.probes;
        if (out.status == SolverStatus::Feasible) {
            r.feasible_below = lambda;
        } else if (out.status == SolverStatus::Infeasible) {
            r.infeasible_above = lambda;
        } else {
            break;
        }
    }
    return r;
}

// --- see-saw bound for the shift identification game ---

namespace {

// Input-state single-qubit factors for label (gamma, alpha, beta): the wire
// factors are H^{beta(alpha+1)}|gamma> on P, H^{gamma(beta+1)}|alpha> on A
// and H^{alpha(gamma+1)}|beta> on B.
struct ShiftGameStates {
    std::array<Vec, 8> p, a, b;

    ShiftGameStates() {
        for (int gamma = 0; gamma < 2; ++gamma) {
            for (int alpha = 0; alpha < 2; ++alpha) {
                for (int beta = 0; beta < 2; ++beta) {
                    int idx = (gamma << 2) | (alpha << 1) | beta;
                    p[idx] = qubit_state(gamma, beta & (alpha ^ 1));
                    a[idx] = qubit_state(alpha, gamma & (beta ^ 1));
                    b[idx] = qubit_state(beta, alpha & (gamma ^ 1));
                }
            }
        }
    }
};

// An order-routing protocol with a soft control readout: a two-outcome
// instrument with effects {Q, 1-Q} on P picks the order; in the A-first
// branch Alice's family is unconditioned and Bob's conditions on her outcome,
// mirrored in the B-first branch; the final party measures what is left of
// the control with a sub-POVM conditioned on the branch and both outcomes.
// Every such protocol induces a causally separable measurement: the branch
// effects are Q^(1/2) M_f Q^(1/2) (x) (party projectors) with M an ordinary
// POVM, so the chain marginals close onto {Q, 1-Q} and tile the identity.
struct RoutingProtocol {
    Mat q0;                                    // branch effect on P, 0 <= q0 <= 1
    std::array<Mat, 2> alice0;                 // A-first: Alice outcome projectors
    std::array<std::array<Mat, 2>, 2> bob0;    // A-first: Bob projectors given a
    std::array<Mat, 2> bob1;                   // B-first: Bob outcome projectors
    std::array<std::array<Mat, 2>, 2> alice1;  // B-first: Alice projectors given b
    // fiona[r][a][b][f]: sub-POVM on P with sum_f fiona[r][a][b][f] = Q_r.
    std::array<std::array<std::array<std::array<Mat, 2>, 2>, 2>, 2> fiona;

    static double born(const Vec &psi, const Mat &m) {
        return std::max(0.0, (psi.adjoint() * m * psi)(0, 0).real());
    }

    Mat branch_effect(int r) const {
        return r == 0 ? q0 : (Mat::Identity(2, 2) - q0).eval();
    }

    double party_weight(const ShiftGameStates &st, int r, int idx) const {
        int alpha = (idx >> 1) & 1, beta = idx & 1;
        if (r == 0) {
            return born(st.a[idx], alice0[alpha]) * born(st.b[idx], bob0[alpha][beta]);
        }
        return born(st.b[idx], bob1[beta]) * born(st.a[idx], alice1[beta][alpha]);
    }

    double value(const ShiftGameStates &st) const {
        double v = 0;
        for (int idx = 0; idx < 8; ++idx) {
            int gamma = (idx >> 2) & 1, alpha = (idx >> 1) & 1, beta = idx & 1;
            for (int r = 0; r < 2; ++r) {
                v += party_weight(st, r, idx) * born(st.p[idx], fiona[r][alpha][beta][gamma]);
            }
        }
        return v / 8.0;
    }
};

Mat projector_from_angles(double theta, double phi) {
    Vec v(2);
    v << std::cos(theta), std::sin(theta) * std::exp(complex(0, phi));
    return v * v.adjoint();
}

Mat top_eigen_projector(const Mat &g) {
    Mat h = (g + g.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec v = es.eigenvectors().col(1);  // largest eigenvalue of a 2x2
    return v * v.adjoint();
}

Mat psd_sqrt(const Mat &m) {
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Mat positive_part(const Mat &m) {
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Final-party gradient operators on P for one branch and both party
// outcomes: g[f] collects the win weight of guessing f.
std::array<Mat, 2> fiona_gradients(
    const RoutingProtocol &prot, const ShiftGameStates &st, int r, int a, int b) {
    std::array<Mat, 2> g = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
    for (int gamma = 0; gamma < 2; ++gamma) {
        int idx = (gamma << 2) | (a << 1) | b;
        g[gamma] += prot.party_weight(st, r, idx) * (st.p[idx] * st.p[idx].adjoint());
    }
    return g;
}

// Exact final-party update: maximize sum_f Tr[phi_f g_f] over sub-POVMs with
// sum_f phi_f = Q_r, via the sandwiched two-outcome Helstrom solution.
void update_fiona(RoutingProtocol &prot, const ShiftGameStates &st) {
    for (int r = 0; r < 2; ++r) {
        Mat q = prot.branch_effect(r);
        Mat root = psd_sqrt(q);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                auto g = fiona_gradients(prot, st, r, a, b);
                Mat sandwich = root * (g[0] - g[1]) * root;
                Eigen::SelfAdjointEigenSolver<Mat> es((sandwich + sandwich.adjoint()) / 2.0);
                Mat plus = Mat::Zero(2, 2);
                for (int k = 0; k < 2; ++k) {
                    if (es.eigenvalues()(k) > 0) {
                        plus += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
                    }
                }
                prot.fiona[r][a][b][0] = root * plus * root;
                prot.fiona[r][a][b][1] = q - prot.fiona[r][a][b][0];
            }
        }
    }
}

// One coordinate-maximization sweep. The party and final-measurement steps
// are exact closed-form convex maxima; the branch-effect step is a monotone
// accept-if-better grid refinement with the final party re-solved inside.
double seesaw_sweep(RoutingProtocol &prot, const ShiftGameStates &st) {
    update_fiona(prot, st);
    // A-first branch: Alice, then Bob conditioned on her outcome.
    {
        Mat g[2] = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
        for (int idx = 0; idx < 8; ++idx) {
            int gamma = (idx >> 2) & 1, alpha = (idx >> 1) & 1, beta = idx & 1;
            double w = RoutingProtocol::born(st.p[idx], prot.fiona[0][alpha][beta][gamma]) *
                       RoutingProtocol::born(st.b[idx], prot.bob0[alpha][beta]);
            g[alpha] += w * (st.a[idx] * st.a[idx].adjoint());
        }
        Mat m = top_eigen_projector(g[0] - g[1]);
        prot.alice0 = {m, Mat::Identity(2, 2) - m};
    }
    for (int a = 0; a < 2; ++a) {
        Mat g[2] = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
        for (int idx = 0; idx < 8; ++idx) {
            int gamma = (idx >> 2) & 1, alpha = (idx >> 1) & 1, beta = idx & 1;
            if (alpha != a) {
                continue;
            }
            double w = RoutingProtocol::born(st.p[idx], prot.fiona[0][alpha][beta][gamma]) *
                       RoutingProtocol::born(st.a[idx], prot.alice0[alpha]);
            g[beta] += w * (st.b[idx] * st.b[idx].adjoint());
        }
        Mat m = top_eigen_projector(g[0] - g[1]);
        prot.bob0[a] = {m, Mat::Identity(2, 2) - m};
    }
    // B-first branch.
    {
        Mat g[2] = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
        for (int idx = 0; idx < 8; ++idx) {
            int gamma = (idx >> 2) & 1, alpha = (idx >> 1) & 1, beta = idx & 1;
            double w = RoutingProtocol::born(st.p[idx], prot.fiona[1][alpha][beta][gamma]) *
                       RoutingProtocol::born(st.a[idx], prot.alice1[beta][alpha]);
            g[beta] += w * (st.b[idx] * st.b[idx].adjoint());
        }
        Mat m = top_eigen_projector(g[0] - g[1]);
        prot.bob1 = {m, Mat::Identity(2, 2) - m};
    }
    for (int b = 0; b < 2; ++b) {
        Mat g[2] = {Mat::Zero(2, 2), Mat::Zero(2, 2)};
        for (int idx = 0; idx < 8; ++idx) {
            int gamma = (idx >> 2) & 1, alpha = (idx >> 1) & 1, beta = idx & 1;
            if (beta != b) {
                continue;
            }
            double w = RoutingProtocol::born(st.p[idx], prot.fiona[1][alpha][beta][gamma]) *
                       RoutingProtocol::born(st.b[idx], prot.bob1[beta]);
            g[alpha] += w * (st.a[idx] * st.a[idx].adjoint());
        }
        Mat m = top_eigen_projector(g[0] - g[1]);
        prot.alice1[b] = {m, Mat::Identity(2, 2) - m};
    }
    update_fiona(prot, st);
    double current = prot.value(st);
    // Branch-effect refinement (real rotation angle and two eigenvalues).
    Mat best_q = prot.q0;
    double best = current;
    for (double omega = 0.0; omega < 1.5707; omega += 0.19635) {
        Mat rot(2, 2);
        rot << std::cos(omega), -std::sin(omega), std::sin(omega), std::cos(omega);
        for (double e0 = 0.0; e0 <= 1.0001; e0 += 0.125) {
            for (double e1 = 0.0; e1 <= 1.0001; e1 += 0.125) {
                Eigen::Vector2d ev(std::min(e0, 1.0), std::min(e1, 1.0));
                prot.q0 = rot * ev.asDiagonal() * rot.transpose();
                update_fiona(prot, st);
                double v = prot.value(st);
                if (v > best) {
                    best = v;
                    best_q = prot.q0;
                }
            }
        }
    }
    prot.q0 = best_q;
    update_fiona(prot, st);
    return prot.value(st);
}

std::vector<std::pair<OutcomeWord, Mat>> shift_objective_weights() {
    InputEnsemble shift = shift_basis();
    std::vector<std::pair<OutcomeWord, Mat>> weights;
    for (size_t k = 0; k < shift.states.size(); ++k) {
        const auto &label = shift.states[k].first;  // (alpha, beta, gamma) on wires A, B, C
        OutcomeWord word = {label[2], label[0], label[1]};
        LabeledKet routed = permute_spaces(shift.states[k].second, {"C", "A", "B"});
        Mat g = shift.prior[k] * (routed.vector() * routed.vector().adjoint());
        weights.emplace_back(word, g);
    }
    return weights;
}

}  // namespace

ConstraintSet p2f_constraints(
    const DPOVM *data, const std::vector<std::pair<OutcomeWord, Mat>> *objective, double target) {
    return build_p2f(data, objective, target).cs;
}

std::vector<std::pair<OutcomeWord, Mat>> shift_game_objective() {
    return shift_objective_weights();
}

SdpResult seesaw_causal_bound(const GameSpec &game, int restarts, unsigned seed) {
    SdpResult result;
    result.seed = seed;
    if (game.scenario == GameScenario::LuganoDi) {
        Rational bound = causal_bound_lugano_game(lugano_process());
        result.status = SolverStatus::Feasible;
        result.objective = bound.to_double();
        result.detail = "exact strategy enumeration: " + bound.to_string();
        return result;
    }
    if (game.scenario != GameScenario::ShiftSdiqi) {
        throw Error(ErrorKind::ScenarioMismatch, "the see-saw bound is defined for the shift identification game");
    }

    ShiftGameStates states;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 3.14159265358979323846);
    double best = 0;
    for (int restart = 0; restart < std::max(restarts, 1); ++restart) {
        RoutingProtocol prot;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Mat qbasis = projector_from_angles(angle(rng), angle(rng));
        prot.q0 = unit(rng) * qbasis + unit(rng) * (Mat::Identity(2, 2) - qbasis);
        Mat m = projector_from_angles(angle(rng), angle(rng));
        prot.alice0 = {m, Mat::Identity(2, 2) - m};
        for (int a = 0; a < 2; ++a) {
            Mat mb = projector_from_angles(angle(rng), angle(rng));
            prot.bob0[a] = {mb, Mat::Identity(2, 2) - mb};
            Mat ma = projector_from_angles(angle(rng), angle(rng));
            prot.alice1[a] = {ma, Mat::Identity(2, 2) - ma};
        }
        Mat mb1 = projector_from_angles(angle(rng), angle(rng));
        prot.bob1 = {mb1, Mat::Identity(2, 2) - mb1};
        update_fiona(prot, states);
        double value = 0;
        for (int sweep = 0; sweep < 200; ++sweep) {
            double next = seesaw_sweep(prot, states);
            result.iteration_values.push_back(std::max(best, std::max(value, next)));
            if (next <= value + 1e-13) {
                value = next;
                break;
            }
            value = next;
        }
        best = std::max(best, value);
        ++result.iterations;
    }

    // Certified bracket over the full two-branch decomposition cone.
    auto weights = shift_objective_weights();
    double lo = best, hi = 1.0;
    {
        P2fProblem shape = build_p2f(nullptr, &weights, lo);
        AffineProjector projector(shape.cs);
        FeasibilityOptions opt;
        opt.max_iterations = 16000;
        opt.witness_iterations = 5000;
        int inconclusive = 0;
        for (int probe = 0; probe < 14 && hi - lo > 2e-3 && inconclusive < 2; ++probe) {
            double t = (lo + hi) / 2;
            P2fProblem p = build_p2f(nullptr, &weights, t);
            FeasibilityOutcome out = solve_feasibility(p.cs, opt, &projector);
            if (out.status == SolverStatus::Feasible) {
                lo = t;
            } else if (out.status == SolverStatus::Infeasible) {
                hi = t;
            } else {
                ++inconclusive;
            }
        }
    }
    best = std::max(best, lo);
    result.objective = best;
    result.status = SolverStatus::Feasible;
    result.residual = hi - best;  // certified headroom above the reported value
    std::ostringstream detail;
    detail << "see-saw best " << best << "; certified bracket [" << lo << ", " << hi << "]";
    result.detail = detail.str();
    return result;
}

// --- reference measurements ---

DPOVM white_noise_dpovm_p2f() {
    DPOVM d;
    d.wires = {{"P", 2}, {"A", 2}, {"B", 2}};
    for (int f = 0; f < 2; ++f) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                d.effects.emplace_back(
                    OutcomeWord{f, a, b}, LabeledOperator(d.wires, Mat::Identity(8, 8) / 8.0));
            }
        }
    }
    return d;
}

DPOVM fixed_order_dpovm_p2f() {
    // Comb with the A-before-B order: the control wire runs straight to the
    // final party, Alice's input is |0>, her output feeds Bob, Bob's output
    // is discarded.
    const Mat eye = Mat::Identity(2, 2);
    LabeledKet routing = tensor(
        choi_vector_of_unitary(eye, {"P", 2}, {"F", 2}),
        tensor(
            qubit_ket(party_input_wire(1), 0, 0),
            choi_vector_of_unitary(eye, {party_output_wire(1), 2}, {party_input_wire(2), 2})));
    LabeledOperator comb = tensor(outer(routing), identity_operator({{party_output_wire(2), 2}}));
    std::map<std::string, WireRole> roles;
    roles["P"] = {WireRoleKind::GlobalPast, 0};
    roles["F"] = {WireRoleKind::GlobalFuture, 0};
    roles[party_input_wire(1)] = {WireRoleKind::PartyInput, 1};
    roles[party_output_wire(1)] = {WireRoleKind::PartyOutput, 1};
    roles[party_input_wire(2)] = {WireRoleKind::PartyInput, 2};
    roles[party_output_wire(2)] = {WireRoleKind::PartyOutput, 2};
    ProcessMatrix w(std::move(comb), std::move(roles));
    return effective_dpovm(w, standard_instruments(InstrumentScenario::SwitchShift));
}

DPOVM product_dpovm_tripartite() {
    DPOVM d;
    d.wires = {{"A", 2}, {"B", 2}, {"C", 2}};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                LabeledOperator effect = tensor(
                    tensor(
                        LabeledOperator({d.wires[0]}, qubit_state_projector(a, 0)),
                        LabeledOperator({d.wires[1]}, qubit_state_projector(b, 0))),
                    LabeledOperator({d.wires[2]}, qubit_state_projector(c, 0)));
                d.effects.emplace_back(OutcomeWord{a, b, c}, std::move(effect));
            }
        }
    }
    return d;
}

}  // namespace procmat
