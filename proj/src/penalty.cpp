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


#include "qtsp/penalty.hpp"

#include <cmath>
#include <string>

namespace qtsp {

void LinearConstraint::validate(std::size_t num_vars) const {
    if (terms.empty()) throw ContractError("constraint has no terms");
    if (terms.rbegin()->first >= num_vars) {
        throw DimensionError("constraint references variable " +
                             std::to_string(terms.rbegin()->first) + " outside the model");
    }
}

std::int64_t LinearConstraint::activity(BitsView bits) const {
    std::int64_t total = 0;
    for (const auto& [i, w] : terms) {
        if (i >= bits.size()) throw DimensionError("assignment too short for constraint");
        if (bits[i]) total += w;
    }
    return total;
}

bool LinearConstraint::satisfied(BitsView bits) const {
    const std::int64_t h = residual(bits);
    return sense == Sense::Equal ? h == 0 : h >= 0;
}

LinearConstraint LinearConstraint::greater_equal(std::map<std::size_t, std::int64_t> terms,
                                                 std::int64_t rhs) {
    LinearConstraint c;
    for (auto& [i, w] : terms) w = -w;
    c.terms = std::move(terms);
    c.sense = Sense::LessEqual;
    c.rhs = -rhs;
    return c;
}

void PenaltyConfig::validate() const {
    for (double v : {lambda0, lambda1, lambda2}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ContractError("penalty weights must be finite and nonnegative");
        }
    }
}

std::int64_t max_slack_bound(const LinearConstraint& constraint) {
    if (constraint.sense != Sense::LessEqual) {
        throw ContractError("slack bound is defined for <= constraints only");
    }
    std::int64_t bound = constraint.rhs;
    for (const auto& [i, w] : constraint.terms) {
        if (w < 0) bound -= w;
    }
    if (bound < 0) {
        throw InfeasibleError("constraint is violated by every assignment (max slack " +
                              std::to_string(bound) + ")");
    }
    return bound;
}

std::vector<PenaltyPoint> penalty_curve(double lambda1, double lambda2, std::span<const double> h_values) {
    std::vector<PenaltyPoint> out;
    out.reserve(h_values.size());
    for (double h : h_values) out.push_back({h, unbalanced_penalty(h, lambda1, lambda2)});
    return out;
}

std::vector<PenaltyPoint> penalty_curve(const LinearConstraint& constraint, double lambda1, double lambda2) {
    const double w = static_cast<double>(constraint.rhs);
    const double h[] = {-w, -w / 2.0, 0.0, w / 2.0, w};
    return penalty_curve(lambda1, lambda2, h);
}

}  // namespace qtsp
