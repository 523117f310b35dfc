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

#include "procmat/causal_strategy.hpp"

using namespace procmat;

TEST_CASE("rational arithmetic normalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK((Rational(1, 2) + Rational(1, 4)) == Rational(3, 4));
    CHECK((Rational(3, 4) * Rational(1, 2)) == Rational(3, 8));
    CHECK(Rational(5, 8) < Rational(3, 4));
    CHECK(Rational(3, 4).to_string() == "3/4");
}

TEST_CASE("guessing-game bound of the lugano process is exactly 3/4") {
    CHECK(causal_bound_lugano_game(lugano_process()) == Rational(3, 4));
}

TEST_CASE("guessing-game bound of the constant process is 1") {
    CHECK(causal_bound_lugano_game(constant_process(3)) == Rational(1, 1));
    CHECK(causal_tree_wins_all(constant_process(3)));
}

TEST_CASE("guessing-game bounds of the four-partite processes stay below 1") {
    // Frozen from the exhaustive strategy search.
    CHECK(causal_bound_lugano_game(agb4_process()) == Rational(7, 8));
    CHECK(causal_bound_lugano_game(ardehali_svetlichny4_process()) == Rational(5, 8));
    CHECK(causal_bound_lugano_game(tobar_costa4_process()) == Rational(7, 8));
    CHECK_FALSE(causal_tree_wins_all(agb4_process()));
    CHECK_FALSE(causal_tree_wins_all(lugano_process()));
}

TEST_CASE("bound equals 1 exactly when some tree wins every word") {
    for (int n = 2; n <= 4; ++n) {
        bool all = causal_tree_wins_all(constant_process(n));
        CHECK(all == (causal_bound_lugano_game(constant_process(n)) == Rational(1, 1)));
    }
    CHECK(causal_tree_wins_all(lugano_process()) ==
          (causal_bound_lugano_game(lugano_process()) == Rational(1, 1)));
}

TEST_CASE("discrimination bound of the shift basis is exactly 7/8") {
    CHECK(causal_bound_discrimination(lugano_process()) == Rational(7, 8));
}

TEST_CASE("discrimination bound of the computational basis is 1") {
    CHECK(causal_bound_discrimination(constant_process(3)) == Rational(1, 1));
}

TEST_CASE("the all-zero strategy on the shift ensemble") {
    // Every path delivers computational measurements; each of the six states
    // with one conjugate-basis factor contributes 1/2, the two computational
    // states contribute 1, so the average is (2 + 6/2)/8 = 5/8.
    Rational v = strategy_discrimination_value(lugano_process(), all_zero_strategy(3));
    CHECK(v == Rational(5, 8));
}

TEST_CASE("an optimal tree achieves the enumerated game bound") {
    BooleanProcessFunction w = lugano_process();
    CausalStrategyTree best = best_lugano_game_strategy(w);
    CHECK(strategy_game_value(w, best) == Rational(3, 4));
}

TEST_CASE("enumeration rejects too many parties") {
    CHECK_THROWS_AS(causal_bound_lugano_game(constant_process(5)), Error);
    CHECK_THROWS_AS(causal_bound_discrimination(constant_process(4)), Error);
}
