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

#ifndef PROCMAT_CERTIFICATION_HPP
#define PROCMAT_CERTIFICATION_HPP

#include <string>
#include <vector>

#include "procmat/causal_strategy.hpp"
#include "procmat/measurement.hpp"
#include "procmat/solver.hpp"

namespace procmat {

enum class GameScenario {
    LuganoDi,    // classical guessing game on delivered inputs
    ShiftSdiqi,  // shift-state identification with trusted quantum inputs
    Ndi,         // one quantum input on the control wire, classical otherwise
};

GameScenario game_scenario_from_string(const std::string &name);

struct GameSpec {
    GameScenario scenario = GameScenario::ShiftSdiqi;
};

struct SdpResult {
    SolverStatus status = SolverStatus::Inconclusive;
    double residual = 0;
    double objective = 0;
    int iterations = 0;
    unsigned seed = 0;
    double witness_margin = 0;
    double witness_value = 0;
    // Feasible decompositions, keyed by block name.
    std::vector<std::pair<std::string, Mat>> decomposition;
    // Monotone best-so-far value per see-saw iteration, when applicable.
    std::vector<double> iteration_values;
    std::string detail;
};

/// Map from state labels to measurement outcome words: outcome word position
/// i reads label position perm[i]; the same permutation routes state factors
/// onto the measurement wires.
using OutcomeRelabel = std::vector<int>;

OutcomeRelabel identity_relabel(int n);

/// Average success probability sum_l prior(l) <psi_l| E_{relabel(l)} |psi_l>.
double discrimination_value(const DPOVM &d, const InputEnsemble &e, const OutcomeRelabel &relabel);

/// Guessing-game value of resources under the standard read-and-echo play:
/// parties output uniformly and the delivered inputs must match w.
double lugano_game_value(const BooleanProcessFunction &w);
double lugano_game_value(const ProcessMatrix &process);
Rational lugano_game_value(const BooleanProcessFunction &w, const CausalStrategyTree &tree);

/// Value of the one-quantum-input inequality: classical inputs a, b for the
/// parties, conjugate-coded control states H^{b(a+1)}|gamma> on P; win when
/// the final outcome returns gamma and the delivered inputs match the
/// process function. Accepts processes with or without a target future wire.
double ndi_game_value(const ProcessMatrix &w);

/// Affine constraints of the two-branch causal decomposition. With `data`
/// the branch sums are pinned to its effects; with `objective` a scalar row
/// fixes (sum of objective traces - slack) = target.
ConstraintSet p2f_constraints(
    const DPOVM *data, const std::vector<std::pair<OutcomeWord, Mat>> *objective, double target);

/// Objective weights of the shift identification game in the (P, A, B)
/// convention: outcome word and prior-weighted input projector per state.
std::vector<std::pair<OutcomeWord, Mat>> shift_game_objective();

/// Feasibility of the two-branch causal decomposition of a (P+2+F)
/// distributed measurement (wires P, A, B; outcome words (f, a, b)).
SdpResult causal_sep_feasibility_p2f(const DPOVM &d, double feas_tol = 1e-7);

/// Feasibility of the six-permutation causal decomposition of a tripartite
/// distributed measurement (wires A, B, C; outcome words (a, b, c)).
SdpResult causal_sep_feasibility_tripartite(const DPOVM &d, double feas_tol = 1e-7);

/// Largest mixing weight lambda for which lambda*d + (1-lambda)*noise stays
/// causally separable, bracketed by bisection with certified verdicts.
struct ThresholdResult {
    double feasible_below = 0;    // largest lambda certified separable
    double infeasible_above = 1;  // smallest lambda certified nonseparable
    int probes = 0;
};
ThresholdResult mixing_threshold_p2f(const DPOVM &d, const DPOVM &noise, int probes = 40);

/// Causal bound on a game: alternating optimization of the instrument angles
/// of an order-routing protocol (lower bound, monotone iterates) plus a
/// bisection over the causal-decomposition cone with certified verdicts
/// (upper bound). The reported objective is the best constructive value; the
/// certified bracket is recorded in the result.
SdpResult seesaw_causal_bound(const GameSpec &game, int restarts, unsigned seed);

/// Uniform noise measurement on the (P, A, B) wires: every outcome gets 1/8.
DPOVM white_noise_dpovm_p2f();

/// Fixed-order reference: the measurement induced by a comb that routes the
/// control wire to the final party and relays Alice's outcome to Bob.
DPOVM fixed_order_dpovm_p2f();

/// Product computational measurement on three wires (trivially separable).
DPOVM product_dpovm_tripartite();

}  // namespace procmat

#endif
