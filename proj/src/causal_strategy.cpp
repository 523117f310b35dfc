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

#include "procmat/causal_strategy.hpp"

#include <functional>
#include <numeric>

namespace procmat {

namespace {

long long gcd_ll(long long a, long long b) {
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

int word_bit(uint32_t word, int party, int n) {
    return (word >> (n - 1 - party)) & 1u;
}

uint32_t with_bit(uint32_t word, int party, int n, int value) {
    uint32_t mask = 1u << (n - 1 - party);
    return value ? (word | mask) : (word & ~mask);
}

// The strategy search is a max over decision trees; trees reaching the same
// (acted set, outputs so far, inputs delivered) have identical optimal
// continuations, so the exhaustive max is memoized on that state.
struct StrategySearch {
    const BooleanProcessFunction &w;
    int n;
    // Leaf value for a complete play (outputs word a, delivered inputs x).
    std::function<Rational(uint32_t, uint32_t)> leaf;

    std::vector<Rational> value;
    std::vector<uint8_t> ready;
    std::vector<int> best_party;
    std::vector<int> best_input;

    StrategySearch(const BooleanProcessFunction &w_, std::function<Rational(uint32_t, uint32_t)> leaf_)
        : w(w_), n(w_.n_parties()), leaf(std::move(leaf_)) {
        size_t states = 1u << (3 * n);
        value.assign(states, Rational::zero());
        ready.assign(states, 0);
        best_party.assign(states, -1);
        best_input.assign(states, 0);
    }

    size_t key(uint32_t mask, uint32_t a, uint32_t x) const {
        return mask | (a << n) | (x << (2 * n));
    }

    Rational solve(uint32_t mask, uint32_t a, uint32_t x) {
        size_t k = key(mask, a, x);
        if (ready[k]) {
            return value[k];
        }
        Rational best = Rational::zero();
        if (mask == (1u << n) - 1) {
            best = leaf(a, x);
        } else {
            bool first = true;
            for (int party = 0; party < n; ++party) {
                if (word_bit(mask, party, n)) {
                    continue;
                }
                for (int input = 0; input < 2; ++input) {
                    Rational total = Rational::zero();
                    for (int out = 0; out < 2; ++out) {
                        total = total + solve(
                                            with_bit(mask, party, n, 1),
                                            with_bit(a, party, n, out),
                                            with_bit(x, party, n, input));
                    }
                    if (first || best < total) {
                        best = total;
                        best_party[k] = party;
                        best_input[k] = input;
                        first = false;
                    }
                }
            }
        }
        ready[k] = 1;
        value[k] = best;
        return best;
    }

    int extract_tree(CausalStrategyTree &tree, uint32_t mask, uint32_t a, uint32_t x) {
        size_t k = key(mask, a, x);
        int party = best_party[k];
        int input = best_input[k];
        CausalStrategyTree::Node node;
        node.party = party;
        node.input = input;
        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(node);
        uint32_t next_mask = with_bit(mask, party, n, 1);
        for (int out = 0; out < 2; ++out) {
            int child = -1;
            if (next_mask != (1u << n) - 1) {
                child = extract_tree(
                    tree, next_mask, with_bit(a, party, n, out), with_bit(x, party, n, input));
            }
            tree.nodes[id].child[out] = child;
        }
        return id;
    }
};

Rational game_leaf(const BooleanProcessFunction &w, uint32_t a, uint32_t x) {
    return w.evaluate_word(a) == x ? Rational::one() : Rational::zero();
}

Rational discrimination_leaf(const BooleanProcessFunction &w, uint32_t a, uint32_t x) {
    // Born weight of the outcome word matching the label: 1 per party whose
    // delivered basis matches the state's Hadamard power, 1/2 otherwise.
    int n = w.n_parties();
    Rational weight = Rational::one();
    for (int j = 0; j < n; ++j) {
        if (w.input_of_word(j, a) != word_bit(x, j, n)) {
            weight = weight * Rational(1, 2);
        }
    }
    return weight;
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) {
        throw Error(ErrorKind::Internal, "rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = gcd_ll(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) {
        den = 1;
    }
}

Rational Rational::operator+(const Rational &o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational &o) const {
    return Rational(num * o.num, den * o.den);
}

bool Rational::operator<(const Rational &o) const {
    return num * o.den < o.num * den;
}

std::string Rational::to_string() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

CausalStrategyTree all_zero_strategy(int n_parties) {
    CausalStrategyTree tree;
    tree.n_parties = n_parties;
    // Chain party 0, 1, ..., N-1; both output branches continue identically.
    std::function<int(int)> build = [&](int party) -> int {
        CausalStrategyTree::Node node;
        node.party = party;
        node.input = 0;
        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(node);
        for (int out = 0; out < 2; ++out) {
            tree.nodes[id].child[out] = -1;
        }
        if (party + 1 < n_parties) {
            int c0 = build(party + 1);
            tree.nodes[id].child[0] = c0;
            int c1 = build(party + 1);
            tree.nodes[id].child[1] = c1;
        }
        return id;
    };
    tree.root = build(0);
    return tree;
}

namespace {

// Walks the tree for a fixed full output word; returns the delivered inputs.
uint32_t delivered_inputs(const CausalStrategyTree &tree, uint32_t a, int n) {
    uint32_t x = 0;
    int node = tree.root;
    while (node >= 0) {
        const auto &nd = tree.nodes[node];
        x = with_bit(x, nd.party, n, nd.input);
        node = nd.child[word_bit(a, nd.party, n)];
    }
    return x;
}

}  // namespace

Rational strategy_game_value(const BooleanProcessFunction &w, const CausalStrategyTree &tree) {
    int n = w.n_parties();
    long long wins = 0;
    for (uint32_t a = 0; a < (1u << n); ++a) {
        if (delivered_inputs(tree, a, n) == w.evaluate_word(a)) {
            ++wins;
        }
    }
    return Rational(wins, 1ll << n);
}

Rational strategy_discrimination_value(const BooleanProcessFunction &w, const CausalStrategyTree &tree) {
    int n = w.n_parties();
    Rational total = Rational::zero();
    for (uint32_t a = 0; a < (1u << n); ++a) {
        uint32_t x = delivered_inputs(tree, a, n);
        total = total + discrimination_leaf(w, a, x);
    }
    return total * Rational(1, 1ll << n);
}

Rational causal_bound_lugano_game(const BooleanProcessFunction &w) {
    if (w.n_parties() > 4) {
        throw Error(ErrorKind::TooManyParties, "strategy enumeration is limited to 4 parties");
    }
    StrategySearch search(w, [&w](uint32_t a, uint32_t x) { return game_leaf(w, a, x); });
    Rational wins = search.solve(0, 0, 0);
    return wins * Rational(1, 1ll << w.n_parties());
}

Rational causal_bound_discrimination(const BooleanProcessFunction &w) {
    if (w.n_parties() != 3) {
        throw Error(ErrorKind::TooManyParties, "discrimination enumeration is limited to 3 parties");
    }
    StrategySearch search(w, [&w](uint32_t a, uint32_t x) { return discrimination_leaf(w, a, x); });
    Rational total = search.solve(0, 0, 0);
    return total * Rational(1, 1ll << w.n_parties());
}

CausalStrategyTree best_lugano_game_strategy(const BooleanProcessFunction &w) {
    if (w.n_parties() > 4) {
        throw Error(ErrorKind::TooManyParties, "strategy enumeration is limited to 4 parties");
    }
    StrategySearch search(w, [&w](uint32_t a, uint32_t x) { return game_leaf(w, a, x); });
    search.solve(0, 0, 0);
    CausalStrategyTree tree;
    tree.n_parties = w.n_parties();
    tree.root = search.extract_tree(tree, 0, 0, 0);
    return tree;
}

bool causal_tree_wins_all(const BooleanProcessFunction &w) {
    int n = w.n_parties();
    if (n > 4) {
        throw Error(ErrorKind::TooManyParties, "strategy enumeration is limited to 4 parties");
    }
    // Exists a continuation winning every completion of the current play.
    std::function<bool(uint32_t, uint32_t, uint32_t)> wins_all =
        [&](uint32_t mask, uint32_t a, uint32_t x) -> bool {
        if (mask == (1u << n) - 1) {
            return w.evaluate_word(a) == x;
        }
        for (int party = 0; party < n; ++party) {
            if (word_bit(mask, party, n)) {
                continue;
            }
            for (int input = 0; input < 2; ++input) {
                bool both = true;
                for (int out = 0; out < 2 && both; ++out) {
                    both = wins_all(
                        with_bit(mask, party, n, 1),
                        with_bit(a, party, n, out),
                        with_bit(x, party, n, input));
                }
                if (both) {
                    return true;
                }
            }
        }
        return false;
    };
    return wins_all(0, 0, 0);
}

}  // namespace procmat
