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


#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qtsp/bqm.hpp"

namespace qtsp {

enum class Sense { Equal, LessEqual };

/// sum_i w_i x_i (== | <=) rhs with integer weights.
struct LinearConstraint {
    std::map<std::size_t, std::int64_t> terms;
    Sense sense = Sense::LessEqual;
    std::int64_t rhs = 0;

    /// Nonempty terms; an index at or past `num_vars` is rejected when given.
    void validate(std::size_t num_vars = static_cast<std::size_t>(-1)) const;

    /// Value of sum_i w_i x_i.
    std::int64_t activity(BitsView bits) const;

    /// rhs - activity. Nonnegative iff a <= constraint is satisfied.
    std::int64_t residual(BitsView bits) const { return rhs - activity(bits); }

    bool satisfied(BitsView bits) const;

    /// sum w_i x_i >= rhs, stored as its negation -sum w_i x_i <= -rhs.
    static LinearConstraint greater_equal(std::map<std::size_t, std::int64_t> terms, std::int64_t rhs);

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// Penalty weights: lambda0 on equalities, lambda1 and lambda2 on inequalities.
/// Slack encoding uses only lambda1; unbalanced uses both.
struct PenaltyConfig {
    double lambda0 = 0.88;
    double lambda1 = 0.46;
    double lambda2 = 0.54;

    static PenaltyConfig unbalanced_defaults() { return {0.88, 0.46, 0.54}; }
    static PenaltyConfig slack_defaults() { return {0.88, 0.88, 0.0}; }

    void validate() const;

    friend bool operator==(const PenaltyConfig&, const PenaltyConfig&) = default;
};

struct SlackExpansion {
    LinearConstraint constraint;
    /// Fresh variables appended to the model; bit k has weight 2^k.
    std::vector<std::size_t> slack_var_indices;
    std::size_t num_bits = 0;
};

/// weight * (constant + sum_k a_k x_k)^2, expanded with x^2 = x. Pair entries
/// receive the full cross term 2 * a_i * a_j.
template <class Scalar>
void add_squared_linear(BinaryQuadraticModel<Scalar>& model,
                        std::span<const std::pair<std::size_t, Scalar>> terms, Scalar constant,
                        Scalar weight) {
    model.add_offset(weight * constant * constant);
    for (std::size_t a = 0; a < terms.size(); ++a) {
        const auto& [i, ci] = terms[a];
        model.add_linear(i, weight * (ci * ci + Scalar(2) * constant * ci));
        for (std::size_t b = a + 1; b < terms.size(); ++b) {
            const auto& [j, cj] = terms[b];
            model.add_quadratic(i, j, weight * Scalar(2) * ci * cj);
        }
    }
}

/// Adds lambda0 * (sum c_i x_i - C)^2.
template <class Scalar>
void encode_equality(BinaryQuadraticModel<Scalar>& model, const LinearConstraint& constraint,
                     Scalar lambda0) {
    constraint.validate(model.num_vars());
    if (constraint.sense != Sense::Equal) {
        throw ContractError("encode_equality needs an equality constraint");
    }
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (const auto& [i, c] : constraint.terms) terms.emplace_back(i, static_cast<Scalar>(c));
    add_squared_linear<Scalar>(model, terms, -static_cast<Scalar>(constraint.rhs), lambda0);
}

/// max over x of W - sum w_i x_i, which is W minus the sum of the negative
/// weights. Throws InfeasibleError when negative, i.e. no assignment satisfies
/// the constraint.
std::int64_t max_slack_bound(const LinearConstraint& constraint);

/// Number of binary slack bits needed to represent 0..bound.
inline std::size_t slack_bits_for(std::int64_t bound) {
    return bound <= 0 ? 0 : static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(bound)));
}

/// Adds lambda1 * (W - sum w_i x_i - sum_k 2^k s_k)^2 over fresh slack bits
/// s_k appended to the model. A zero bound needs no slack and is encoded as
/// the equality W - sum w_i x_i = 0.
template <class Scalar>
SlackExpansion encode_inequality_slack(BinaryQuadraticModel<Scalar>& model,
                                       const LinearConstraint& constraint, Scalar lambda1) {
    constraint.validate(model.num_vars());
    if (constraint.sense != Sense::LessEqual) {
        throw ContractError("slack encoding needs a <= constraint");
    }
    const std::int64_t bound = max_slack_bound(constraint);
    SlackExpansion expansion{constraint, {}, slack_bits_for(bound)};

    const std::size_t first = model.add_variables(expansion.num_bits);
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (const auto& [i, w] : constraint.terms) terms.emplace_back(i, static_cast<Scalar>(w));
    Scalar weight = Scalar(1);
    for (std::size_t k = 0; k < expansion.num_bits; ++k) {
        expansion.slack_var_indices.push_back(first + k);
        terms.emplace_back(first + k, weight);
        weight *= Scalar(2);
    }
    add_squared_linear<Scalar>(model, terms, -static_cast<Scalar>(constraint.rhs), lambda1);
    return expansion;
}

/// Adds xi(h) = -lambda1 * h + lambda2 * h^2 with h = W - sum w_i x_i. No new
/// variables. xi is not clipped: the linear part rewards slack on the
/// satisfied side.
template <class Scalar>
void encode_inequality_unbalanced(BinaryQuadraticModel<Scalar>& model,
                                  const LinearConstraint& constraint, Scalar lambda1,
                                  Scalar lambda2) {
    constraint.validate(model.num_vars());
    if (constraint.sense != Sense::LessEqual) {
        throw ContractError("unbalanced encoding needs a <= constraint");
    }
    const Scalar rhs = static_cast<Scalar>(constraint.rhs);
    model.add_offset(-lambda1 * rhs);
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (const auto& [i, w] : constraint.terms) {
        model.add_linear(i, lambda1 * static_cast<Scalar>(w));
        terms.emplace_back(i, -static_cast<Scalar>(w));
    }
    add_squared_linear<Scalar>(model, terms, rhs, lambda2);
}

/// xi(h) = -lambda1 * h + lambda2 * h^2.
inline double unbalanced_penalty(double h, double lambda1, double lambda2) {
    return -lambda1 * h + lambda2 * h * h;
}

struct PenaltyPoint {
    double h;
    double xi;
};

std::vector<PenaltyPoint> penalty_curve(double lambda1, double lambda2, std::span<const double> h_values);

/// xi at the marker points h in {-W, -W/2, 0, W/2, W} of the constraint.
std::vector<PenaltyPoint> penalty_curve(const LinearConstraint& constraint, double lambda1, double lambda2);

}  // namespace qtsp
