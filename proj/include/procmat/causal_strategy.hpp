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

#ifndef PROCMAT_CAUSAL_STRATEGY_HPP
#define PROCMAT_CAUSAL_STRATEGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "procmat/process_function.hpp"

namespace procmat {

/// Exact rational with normalized sign and gcd. All strategy bounds are dyadic
/// so the denominators stay tiny.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational zero() {
        return Rational(0, 1);
    }
    static Rational one() {
        return Rational(1, 1);
    }

    Rational operator+(const Rational &o) const;
    Rational operator*(const Rational &o) const;
    bool operator==(const Rational &o) const {
        return num == o.num && den == o.den;
    }
    bool operator<(const Rational &o) const;
    bool operator<=(const Rational &o) const {
        return *this < o || *this == o;
    }
    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    std::string to_string() const;
};

/// A deterministic dynamical-order classical strategy: the root fixes the
/// first party and its input; every node branches on the acting party's
/// output bit and names the next party and its input. Each party acts exactly
/// once along every root-to-leaf path.
struct CausalStrategyTree {
    struct Node {
        int party = -1;
        int input = 0;
        int child[2] = {-1, -1};  // -1 marks a leaf edge
    };
    std::vector<Node> nodes;
    int root = -1;
    int n_parties = 0;
};

/// Non-adaptive strategy: parties act in index order, all inputs zero.
CausalStrategyTree all_zero_strategy(int n_parties);

/// Guessing-game value of a fixed strategy: probability, over uniformly
/// random party outputs, that every delivered input matches w.
Rational strategy_game_value(const BooleanProcessFunction &w, const CausalStrategyTree &tree);

/// Discrimination value of a fixed strategy: each party measures its qubit of
/// a uniformly drawn basis state from nlwe_basis(w) with the Hadamard-power
/// family selected by the delivered input; success means the joint outcome
/// word equals the state label.
Rational strategy_discrimination_value(const BooleanProcessFunction &w, const CausalStrategyTree &tree);

/// Max of strategy_game_value over all causal strategy trees (N <= 4).
Rational causal_bound_lugano_game(const BooleanProcessFunction &w);

/// Max of strategy_discrimination_value over all causal strategy trees (N = 3).
Rational causal_bound_discrimination(const BooleanProcessFunction &w);

/// An optimal tree for the guessing game (same maximization as
/// causal_bound_lugano_game).
CausalStrategyTree best_lugano_game_strategy(const BooleanProcessFunction &w);

/// Independent existence check: is there a tree winning the guessing game on
/// all 2^N output words? Cross-checks the bound == 1 case.
bool causal_tree_wins_all(const BooleanProcessFunction &w);

}  // namespace procmat

#endif
