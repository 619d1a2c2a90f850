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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qtsp/errors.hpp"

namespace qtsp {

/// Assignment of binary variables, one byte per variable holding 0 or 1.
using Bits = std::vector<std::uint8_t>;
using BitsView = std::span<const std::uint8_t>;

/// Sparse quadratic polynomial over binary variables
///
///     E(x) = offset + sum_i a_i x_i + sum_{i<j} b_ij x_i x_j
///
/// Each unordered pair stores the total weight of x_i x_j in the polynomial,
/// so no factor of two is implied anywhere. Coefficients that merge to exactly
/// zero are erased, which keeps the stored form canonical.
template <class Scalar = double>
class BinaryQuadraticModel {
 public:
    using scalar_type = Scalar;
    using index_type = std::size_t;
    using pair_type = std::pair<index_type, index_type>;
    using linear_map = std::map<index_type, Scalar>;
    using quadratic_map = std::map<pair_type, Scalar>;

    BinaryQuadraticModel() = default;

    explicit BinaryQuadraticModel(index_type num_vars, Scalar offset = Scalar(0))
            : num_vars_(num_vars), offset_(offset) {}

    index_type num_vars() const noexcept { return num_vars_; }

    /// Append `count` fresh variables and return the index of the first one.
    index_type add_variables(index_type count) {
        index_type first = num_vars_;
        num_vars_ += count;
        return first;
    }

    void add_linear(index_type i, Scalar bias) {
        check_index(i);
        if (bias == Scalar(0)) return;
        auto [it, inserted] = linear_.try_emplace(i, bias);
        if (!inserted) {
            it->second += bias;
            if (it->second == Scalar(0)) linear_.erase(it);
        }
    }

    /// Add `bias * x_i * x_j`. A diagonal pair folds into the linear term
    /// because x_i * x_i == x_i for binary variables.
    void add_quadratic(index_type i, index_type j, Scalar bias) {
        check_index(i);
        check_index(j);
        if (i == j) {
            add_linear(i, bias);
            return;
        }
        if (bias == Scalar(0)) return;
        auto [it, inserted] = quadratic_.try_emplace(ordered(i, j), bias);
        if (!inserted) {
            it->second += bias;
            if (it->second == Scalar(0)) quadratic_.erase(it);
        }
    }

    void add_offset(Scalar bias) { offset_ += bias; }

    Scalar linear(index_type i) const {
        auto it = linear_.find(i);
        return it == linear_.end() ? Scalar(0) : it->second;
    }

    Scalar quadratic(index_type i, index_type j) const {
        if (i == j) return Scalar(0);
        auto it = quadratic_.find(ordered(i, j));
        return it == quadratic_.end() ? Scalar(0) : it->second;
    }

    Scalar offset() const noexcept { return offset_; }

    const linear_map& linear_terms() const noexcept { return linear_; }
    const quadratic_map& quadratic_terms() const noexcept { return quadratic_; }

    std::size_t num_interactions() const noexcept { return quadratic_.size(); }

    Scalar energy(BitsView bits) const {
        if (bits.size() != num_vars_) {
            throw DimensionError("assignment has " + std::to_string(bits.size()) +
                                 " entries, model has " + std::to_string(num_vars_) +
                                 " variables");
        }
        Scalar total = offset_;
        for (const auto& [i, bias] : linear_) {
            if (bits[i]) total += bias;
        }
        for (const auto& [key, bias] : quadratic_) {
            if (bits[key.first] && bits[key.second]) total += bias;
        }
        return total;
    }

    /// Upper-triangular coefficient matrix: linear terms on the diagonal,
    /// pair totals above it. E(x) = offset + x^T Q x for x in {0,1}^n.
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q =
                Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
                        static_cast<Eigen::Index>(num_vars_), static_cast<Eigen::Index>(num_vars_));
        for (const auto& [i, bias] : linear_) {
            q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = bias;
        }
        for (const auto& [key, bias] : quadratic_) {
            q(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) = bias;
        }
        return q;
    }

    BinaryQuadraticModel& operator+=(const BinaryQuadraticModel& other) {
        if (other.num_vars_ > num_vars_) num_vars_ = other.num_vars_;
        for (const auto& [i, bias] : other.linear_) add_linear(i, bias);
        for (const auto& [key, bias] : other.quadratic_) add_quadratic(key.first, key.second, bias);
        offset_ += other.offset_;
        return *this;
    }

    friend bool operator==(const BinaryQuadraticModel&, const BinaryQuadraticModel&) = default;

 private:
    static pair_type ordered(index_type i, index_type j) {
        return i < j ? pair_type{i, j} : pair_type{j, i};
    }

    void check_index(index_type i) const {
        if (i >= num_vars_) {
            throw DimensionError("variable index " + std::to_string(i) + " out of range [0, " +
                                 std::to_string(num_vars_) + ")");
        }
    }

    index_type num_vars_ = 0;
    linear_map linear_;
    quadratic_map quadratic_;
    Scalar offset_ = Scalar(0);
};

using Bqm = BinaryQuadraticModel<double>;

template <class Scalar>
Scalar evaluate(const BinaryQuadraticModel<Scalar>& model, BitsView bits) {
    return model.energy(bits);
}

/// Hardware-facing size of a model.
struct ResourceCounts {
    std::size_t num_vars = 0;
    /// Variables that appear in at least one nonzero term.
    std::size_t qubits = 0;
    /// Stored nonzero pair interactions.
    std::size_t connections = 0;

    friend bool operator==(const ResourceCounts&, const ResourceCounts&) = default;
};

template <class Scalar>
ResourceCounts resource_counts(const BinaryQuadraticModel<Scalar>& model) {
    std::vector<bool> touched(model.num_vars(), false);
    for (const auto& [i, bias] : model.linear_terms()) touched[i] = true;
    for (const auto& [key, bias] : model.quadratic_terms()) {
        touched[key.first] = true;
        touched[key.second] = true;
    }
    ResourceCounts counts;
    counts.num_vars = model.num_vars();
    for (bool t : touched) counts.qubits += t ? 1 : 0;
    counts.connections = model.num_interactions();
    return counts;
}

}  // namespace qtsp
