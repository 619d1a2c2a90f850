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

#include "qtsp/bqm.hpp"

namespace qtsp {

/// Spin assignment, each entry +1 or -1.
using Spins = std::vector<std::int8_t>;
using SpinsView = std::span<const std::int8_t>;

/// H(z) = offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j over z_i in {-1, +1}.
/// Same canonical-storage rules as BinaryQuadraticModel.
template <class Scalar = double>
class IsingModel {
 public:
    using scalar_type = Scalar;
    using index_type = std::size_t;
    using pair_type = std::pair<index_type, index_type>;

    IsingModel() = default;
    explicit IsingModel(index_type num_vars, Scalar offset = Scalar(0))
            : num_vars_(num_vars), offset_(offset) {}

    index_type num_vars() const noexcept { return num_vars_; }

    void add_field(index_type i, Scalar bias) {
        check_index(i);
        merge(fields_, i, bias);
    }

    void add_coupling(index_type i, index_type j, Scalar bias) {
        check_index(i);
        check_index(j);
        if (i == j) {
            // z_i * z_i == 1
            offset_ += bias;
            return;
        }
        merge(couplings_, i < j ? pair_type{i, j} : pair_type{j, i}, bias);
    }

    void add_offset(Scalar bias) { offset_ += bias; }

    Scalar field(index_type i) const {
        auto it = fields_.find(i);
        return it == fields_.end() ? Scalar(0) : it->second;
    }

    Scalar coupling(index_type i, index_type j) const {
        auto it = couplings_.find(i < j ? pair_type{i, j} : pair_type{j, i});
        return it == couplings_.end() ? Scalar(0) : it->second;
    }

    Scalar offset() const noexcept { return offset_; }
    const std::map<index_type, Scalar>& fields() const noexcept { return fields_; }
    const std::map<pair_type, Scalar>& couplings() const noexcept { return couplings_; }

    Scalar energy(SpinsView spins) const {
        if (spins.size() != num_vars_) {
            throw DimensionError("spin vector has " + std::to_string(spins.size()) +
                                 " entries, model has " + std::to_string(num_vars_));
        }
        Scalar total = offset_;
        for (const auto& [i, h] : fields_) total += h * spins[i];
        for (const auto& [key, j] : couplings_) total += j * spins[key.first] * spins[key.second];
        return total;
    }

    friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
    template <class Map, class Key>
    static void merge(Map& map, const Key& key, Scalar bias) {
        if (bias == Scalar(0)) return;
        auto [it, inserted] = map.try_emplace(key, bias);
        if (!inserted) {
            it->second += bias;
            if (it->second == Scalar(0)) map.erase(it);
        }
    }

    void check_index(index_type i) const {
        if (i >= num_vars_) {
            throw DimensionError("spin index " + std::to_string(i) + " out of range");
        }
    }

    index_type num_vars_ = 0;
    std::map<index_type, Scalar> fields_;
    std::map<pair_type, Scalar> couplings_;
    Scalar offset_ = Scalar(0);
};

using Ising = IsingModel<double>;

/// Spin image of a binary assignment under x = (1 - z) / 2, i.e. z = 1 - 2x.
inline Spins spins_from_bits(BitsView bits) {
    Spins z(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) z[i] = bits[i] ? -1 : 1;
    return z;
}

inline Bits bits_from_spins(SpinsView spins) {
    Bits x(spins.size());
    for (std::size_t i = 0; i < spins.size(); ++i) x[i] = spins[i] < 0 ? 1 : 0;
    return x;
}

/// Substitute x_i = (1 - z_i) / 2. Energies agree on corresponding assignments;
/// the constant is kept in the offset.
template <class Scalar>
IsingModel<Scalar> to_ising(const BinaryQuadraticModel<Scalar>& model) {
    IsingModel<Scalar> ising(model.num_vars(), model.offset());
    const Scalar half = Scalar(1) / Scalar(2);
    const Scalar quarter = Scalar(1) / Scalar(4);
    for (const auto& [i, a] : model.linear_terms()) {
        ising.add_field(i, -a * half);
        ising.add_offset(a * half);
    }
    for (const auto& [key, b] : model.quadratic_terms()) {
        ising.add_coupling(key.first, key.second, b * quarter);
        ising.add_field(key.first, -b * quarter);
        ising.add_field(key.second, -b * quarter);
        ising.add_offset(b * quarter);
    }
    return ising;
}

/// Substitute z_i = 1 - 2 x_i.
template <class Scalar>
BinaryQuadraticModel<Scalar> from_ising(const IsingModel<Scalar>& ising) {
    BinaryQuadraticModel<Scalar> model(ising.num_vars(), ising.offset());
    for (const auto& [i, h] : ising.fields()) {
        model.add_linear(i, Scalar(-2) * h);
        model.add_offset(h);
    }
    for (const auto& [key, j] : ising.couplings()) {
        model.add_quadratic(key.first, key.second, Scalar(4) * j);
        model.add_linear(key.first, Scalar(-2) * j);
        model.add_linear(key.second, Scalar(-2) * j);
        model.add_offset(j);
    }
    return model;
}

}  // namespace qtsp
