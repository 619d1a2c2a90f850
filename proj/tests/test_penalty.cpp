// Copyright 2026 The qtsp Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.


#include <cmath>
#include <limits>
#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "oracles.hpp"
#include "qtsp/penalty.hpp"
#include "qtsp/tsp.hpp"

namespace qtsp {

using Catch::Approx;

namespace {

LinearConstraint le(std::map<std::size_t, std::int64_t> terms, std::int64_t rhs) {
    return {std::move(terms), Sense::LessEqual, rhs};
}

double weighted_sum(const LinearConstraint& c, const Bits& x) {
    double s = 0.0;
    for (const auto& [i, w] : c.terms) s += static_cast<double>(w) * x[i];
    return s;
}

}  // namespace

TEST_CASE("equality penalty expands the square", "[penalty]") {
    SECTION("one-hot pair") {
        Bqm model(2);
        encode_equality(model, {{{0, 1}, {1, 1}}, Sense::Equal, 1}, 1.0);
        CHECK(model.linear(0) == -1.0);
        CHECK(model.linear(1) == -1.0);
        CHECK(model.quadratic(0, 1) == 2.0);
        CHECK(model.offset() == 1.0);
        CHECK(evaluate(model, Bits{1, 0}) == 0.0);
        // zero penalty iff exactly one bit is set
        testing::for_each_assignment(2, [&](const Bits& x) {
            CHECK((evaluate(model, x) == 0.0) == (x[0] + x[1] == 1));
        });
    }
    SECTION("single variable pinned to zero") {
        Bqm model(1);
        encode_equality(model, {{{0, 1}}, Sense::Equal, 0}, 5.0);
        CHECK(model.linear(0) == 5.0);
        CHECK(model.quadratic_terms().empty());
        CHECK(model.offset() == 0.0);
    }
    SECTION("all-ones satisfaction") {
        Bqm model(4);
        encode_equality(model, {{{0, 2}, {1, -1}, {2, 3}, {3, 1}}, Sense::Equal, 5}, 2.0);
        CHECK(evaluate(model, Bits{1, 1, 1, 1}) == 0.0);
    }
    SECTION("matches direct evaluation for integer weights") {
        const LinearConstraint c{{{0, 2}, {1, -3}, {2, 1}, {4, 1}}, Sense::Equal, 1};
        Bqm model(5);
        encode_equality(model, c, 0.7);
        testing::for_each_assignment(5, [&](const Bits& x) {
            const double r = weighted_sum(c, x) - 1.0;
            CHECK(evaluate(model, x) == Approx(0.7 * r * r).margin(1e-12));
        });
    }
    SECTION("sense is checked") {
        Bqm model(2);
        CHECK_THROWS_AS(encode_equality(model, le({{0, 1}}, 1), 1.0), ContractError);
    }
}

TEST_CASE("maximum slack bound", "[penalty]") {
    CHECK(max_slack_bound(le({{0, 1}, {1, 1}}, 1)) == 1);
    CHECK(max_slack_bound(le({{0, 1}, {1, 1}, {2, 1}}, 2)) == 2);
    CHECK(max_slack_bound(le({{0, -1}}, 0)) == 1);
    CHECK(max_slack_bound(le({{0, 3}, {1, -2}}, 4)) == 6);
    CHECK_THROWS_AS(max_slack_bound(le({{0, 1}}, -1)), InfeasibleError);
    CHECK_THROWS_AS(max_slack_bound({{{0, 1}}, Sense::Equal, 1}), ContractError);
}

TEST_CASE("slack encoding appends floor(log2(bound)) + 1 bits", "[penalty]") {
    SECTION("x0 + x1 <= 1") {
        Bqm model(2);
        const auto expansion = encode_inequality_slack(model, le({{0, 1}, {1, 1}}, 1), 1.0);
        CHECK(expansion.num_bits == 1);
        CHECK(model.num_vars() == 3);
        CHECK(expansion.slack_var_indices == std::vector<std::size_t>{2});
    }
    SECTION("three-city sub-tour") {
        Bqm model(3);
        const auto expansion = encode_inequality_slack(model, le({{0, 1}, {1, 1}, {2, 1}}, 2), 1.0);
        CHECK(expansion.num_bits == 2);
        CHECK(model.num_vars() == 5);
    }
    SECTION("bit counts for larger bounds") {
        for (std::int64_t bound = 1; bound <= 40; ++bound) {
            const auto expected = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(bound)))) + 1;
            CHECK(slack_bits_for(bound) == expected);
        }
    }
    SECTION("matching slack value zeroes the residual") {
        Bqm model(3);
        encode_inequality_slack(model, le({{0, 1}, {1, 1}, {2, 1}}, 2), 0.88);
        // x = (1, 0, 0): h = 1, slack s0 = 1
        CHECK(evaluate(model, Bits{1, 0, 0, 1, 0}) == Approx(0.0).margin(1e-12));
        // x = (0, 0, 0): h = 2, slack s1 = 1
        CHECK(evaluate(model, Bits{0, 0, 0, 0, 1}) == Approx(0.0).margin(1e-12));
    }
    SECTION("zero bound degenerates to an equality without slack") {
        Bqm model(2);
        const auto expansion = encode_inequality_slack(model, le({{0, 1}, {1, 1}}, 0), 2.0);
        CHECK(expansion.num_bits == 0);
        CHECK(model.num_vars() == 2);
        testing::for_each_assignment(2, [&](const Bits& x) {
            const double s = x[0] + x[1];
            CHECK(evaluate(model, x) == Approx(2.0 * s * s));
        });
    }
    SECTION("infeasible constraint is rejected") {
        Bqm model(2);
        CHECK_THROWS_AS(encode_inequality_slack(model, le({{0, 1}}, -1), 1.0), InfeasibleError);
    }
}

TEST_CASE("slack encoding is exact on satisfied and violated assignments", "[penalty][property]") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::int64_t> weight(-3, 4);
    const double lambda1 = 0.75;
    int checked = 0;
    while (checked < 40) {
        const std::size_t n = 2 + rng() % 4;
        LinearConstraint c;
        c.sense = Sense::LessEqual;
        for (std::size_t i = 0; i < n; ++i) {
            const auto w = weight(rng);
            if (w != 0) c.terms[i] = w;
        }
        if (c.terms.empty()) continue;
        c.rhs = weight(rng) + 1;
        std::int64_t bound;
        try {
            bound = max_slack_bound(c);
        } catch (const InfeasibleError&) {
            continue;
        }
        if (bound == 0 || n + slack_bits_for(bound) > 10) continue;

        Bqm model(n);
        const auto expansion = encode_inequality_slack(model, c, lambda1);
        testing::for_each_assignment(n, [&](const Bits& x) {
            double best = std::numeric_limits<double>::infinity();
            testing::for_each_assignment(expansion.num_bits, [&](const Bits& s) {
                Bits full = x;
                full.insert(full.end(), s.begin(), s.end());
                best = std::min(best, evaluate(model, full));
            });
            const double h = static_cast<double>(c.rhs) - weighted_sum(c, x);
            if (h >= 0) {
                CHECK(best == Approx(0.0).margin(1e-12));
            } else {
                CHECK(best >= lambda1 - 1e-12);
            }
        });
        ++checked;
    }
}

TEST_CASE("unbalanced encoding adds xi(h) without new variables", "[penalty]") {
    SECTION("x0 + x1 <= 1 with unit weights") {
        Bqm model(2);
        encode_inequality_unbalanced(model, le({{0, 1}, {1, 1}}, 1), 1.0, 1.0);
        CHECK(model.num_vars() == 2);
        CHECK(evaluate(model, Bits{0, 0}) == 0.0);
        CHECK(evaluate(model, Bits{1, 0}) == 0.0);
        CHECK(evaluate(model, Bits{0, 1}) == 0.0);
        CHECK(evaluate(model, Bits{1, 1}) == 2.0);
    }
    SECTION("tuned weights") {
        CHECK(unbalanced_penalty(-1, 0.46, 0.54) == Approx(1.00).margin(1e-12));
        CHECK(unbalanced_penalty(1, 0.46, 0.54) == Approx(0.08).margin(1e-12));
        CHECK(unbalanced_penalty(0, 0.46, 0.54) == 0.0);
    }
    SECTION("matches direct evaluation") {
        const LinearConstraint c = le({{0, 2}, {1, -1}, {2, 3}, {3, 1}}, 3);
        Bqm model(4);
        encode_inequality_unbalanced(model, c, 0.46, 0.54);
        testing::for_each_assignment(4, [&](const Bits& x) {
            const double h = 3.0 - weighted_sum(c, x);
            CHECK(evaluate(model, x) == Approx(-0.46 * h + 0.54 * h * h).margin(1e-12));
        });
    }
    SECTION("boundary h = 0 is free for any weights") {
        Bqm model(3);
        encode_inequality_unbalanced(model, le({{0, 1}, {1, 1}, {2, 1}}, 2), 3.3, 0.1);
        CHECK(evaluate(model, Bits{1, 1, 0}) == Approx(0.0).margin(1e-12));
    }
    SECTION("sense is checked") {
        Bqm model(2);
        CHECK_THROWS_AS(encode_inequality_unbalanced(model, {{{0, 1}}, Sense::Equal, 1}, 1.0, 1.0),
                        ContractError);
    }
}

TEST_CASE("penalty curve", "[penalty]") {
    SECTION("marker points") {
        const double h[] = {-2.0, 0.0, 2.0};
        const auto curve = penalty_curve(1.0, 1.0, h);
        REQUIRE(curve.size() == 3);
        CHECK(curve[0].xi == 6.0);
        CHECK(curve[1].xi == 0.0);
        CHECK(curve[2].xi == 2.0);

        const auto markers = penalty_curve(le({{0, 1}, {1, 1}, {2, 1}}, 2), 1.0, 1.0);
        REQUIRE(markers.size() == 5);
        CHECK(markers.front().h == -2.0);
        CHECK(markers.front().xi == 6.0);
        CHECK(markers[1].h == -1.0);
        CHECK(markers.back().xi == 2.0);
    }
    SECTION("odd part is -lambda1 h") {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(0.0, 3.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double l1 = u(rng), l2 = u(rng), h = u(rng) * 4.0;
            CHECK(unbalanced_penalty(-h, l1, l2) - unbalanced_penalty(h, l1, l2) ==
                  Approx(2.0 * l1 * h).margin(1e-12));
        }
    }
    SECTION("lambda1 = 0 is symmetric") {
        for (int h = 1; h <= 10; ++h) CHECK(unbalanced_penalty(-h, 0.0, 0.7) == unbalanced_penalty(h, 0.0, 0.7));
    }
    SECTION("violations cost more than the same slack") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0.0, 2.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double l1 = u(rng) + 1e-3, l2 = u(rng);
            for (int h = 1; h <= 10; ++h) CHECK(unbalanced_penalty(-h, l1, l2) > unbalanced_penalty(h, l1, l2));
        }
    }
    SECTION("feasible unit slack carries a small positive bias at the defaults") {
        const auto d = PenaltyConfig::unbalanced_defaults();
        CHECK(unbalanced_penalty(1, d.lambda1, d.lambda2) == Approx(d.lambda2 - d.lambda1));
        CHECK(unbalanced_penalty(1, d.lambda1, d.lambda2) >= 0.0);
    }
}

TEST_CASE("greater-equal constraints are stored negated", "[penalty]") {
    const LinearConstraint c = LinearConstraint::greater_equal({{0, 1}, {1, 2}}, 2);
    CHECK(c.sense == Sense::LessEqual);
    CHECK(c.rhs == -2);
    CHECK(c.terms.at(1) == -2);
    testing::for_each_assignment(2, [&](const Bits& x) { CHECK(c.satisfied(x) == (x[0] + 2 * x[1] >= 2)); });
}

TEST_CASE("encoder order does not matter", "[penalty]") {
    const LinearConstraint eq{{{0, 1}, {1, 1}, {2, 1}}, Sense::Equal, 2};
    const LinearConstraint a = le({{0, 1}, {3, 1}}, 1);
    const LinearConstraint b = le({{1, 2}, {2, 1}, {3, -1}}, 2);

    Bqm first(4);
    encode_equality(first, eq, 0.88);
    encode_inequality_unbalanced(first, a, 0.46, 0.54);
    encode_inequality_unbalanced(first, b, 0.46, 0.54);
    Bqm second(4);
    encode_inequality_unbalanced(second, b, 0.46, 0.54);
    encode_equality(second, eq, 0.88);
    encode_inequality_unbalanced(second, a, 0.46, 0.54);
    testing::for_each_assignment(4, [&](const Bits& x) {
        CHECK(evaluate(first, x) == Approx(evaluate(second, x)).margin(1e-12));
    });

    // slack bits are numbered in encoding order; energies agree after
    // permuting them
    Bqm s1(4), s2(4);
    encode_inequality_slack(s1, a, 0.88);
    encode_inequality_slack(s1, b, 0.88);
    encode_inequality_slack(s2, b, 0.88);
    encode_inequality_slack(s2, a, 0.88);
    REQUIRE(s1.num_vars() == s2.num_vars());
    const std::size_t na = slack_bits_for(max_slack_bound(a));
    const std::size_t nb = slack_bits_for(max_slack_bound(b));
    testing::for_each_assignment(s1.num_vars(), [&](const Bits& x) {
        Bits y(x.begin(), x.begin() + 4);
        y.insert(y.end(), x.begin() + 4 + static_cast<long>(na), x.end());
        y.insert(y.end(), x.begin() + 4, x.begin() + 4 + static_cast<long>(na));
        REQUIRE(y.size() == 4 + na + nb);
        CHECK(evaluate(s1, x) == Approx(evaluate(s2, y)).margin(1e-12));
    });
}

TEST_CASE("six-city sub-tour constraint: slack 17 variables, unbalanced 15", "[penalty]") {
    const TspInstance instance = generate_instance(6, 1);
    const EdgeIndexer indexer(6);
    const LinearConstraint c = subtour_constraint(Subtour({0, 1, 2}), indexer);

    Bqm slack = build_degree_relaxation(instance, 0.88);
    encode_inequality_slack(slack, c, 0.88);
    Bqm unbalanced = build_degree_relaxation(instance, 0.88);
    encode_inequality_unbalanced(unbalanced, c, 0.46, 0.54);
    CHECK(slack.num_vars() == 17);
    CHECK(unbalanced.num_vars() == 15);
}

TEST_CASE("penalty weights are validated", "[penalty]") {
    CHECK_NOTHROW(PenaltyConfig{}.validate());
    CHECK(PenaltyConfig::slack_defaults() == PenaltyConfig{0.88, 0.88, 0.0});
    CHECK_THROWS_AS((PenaltyConfig{-1.0, 0.0, 0.0}.validate()), ContractError);
    CHECK_THROWS_AS((PenaltyConfig{1.0, std::nan(""), 0.0}.validate()), ContractError);
}

}  // namespace qtsp
