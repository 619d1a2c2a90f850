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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qtsp/bqm.hpp"
#include "qtsp/penalty.hpp"

namespace qtsp {

using Coordinates = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Symmetric Euclidean TSP instance.
class TspInstance {
 public:
    TspInstance() = default;

    /// Distances are computed from the coordinates; at least three cities.
    explicit TspInstance(Coordinates coords);

    std::size_t num_cities() const noexcept { return static_cast<std::size_t>(coords_.rows()); }
    const Coordinates& coords() const noexcept { return coords_; }
    const Eigen::MatrixXd& distances() const noexcept { return distances_; }

    double distance(std::size_t i, std::size_t j) const {
        return distances_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

 private:
    Coordinates coords_;
    Eigen::MatrixXd distances_;
};

/// n cities with coordinates drawn i.i.d. uniform from [-1, 1]^2.
/// Reproducible across platforms for a given seed: coordinates come from
/// std::mt19937_64 via the top 53 bits of each draw.
TspInstance generate_instance(std::size_t n, std::uint64_t seed);

/// Edge (i, j), i < j, maps to a variable index in lexicographic (i, j) order.
class EdgeIndexer {
 public:
    explicit EdgeIndexer(std::size_t num_cities);

    std::size_t num_cities() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return n_ * (n_ - 1) / 2; }

    /// Index of the undirected edge {i, j}; argument order is irrelevant.
    std::size_t index(std::size_t i, std::size_t j) const;

    std::pair<std::size_t, std::size_t> edge(std::size_t index) const { return edges_.at(index); }

 private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Cycle through a strict subset of the cities, stored as a sorted city set.
struct Subtour {
    std::vector<std::size_t> cities;

    Subtour() = default;
    /// Sorts and deduplicates.
    explicit Subtour(std::vector<std::size_t> cities);

    std::size_t size() const noexcept { return cities.size(); }

    friend auto operator<=>(const Subtour&, const Subtour&) = default;
};

/// Closed tour as a city sequence starting at city 0.
struct Tour {
    std::vector<std::size_t> cities;
    double distance = 0.0;
};

struct TourAnalysis {
    /// Every city has exactly two selected incident edges.
    bool degree_feasible = false;
    /// Cycles of the selected-edge graph as walk orders, each starting at its
    /// smallest city and heading to the smaller of its two neighbours; ordered
    /// by starting city. Empty unless degree_feasible.
    std::vector<std::vector<std::size_t>> cycles;
    double total_distance = 0.0;
    std::size_t num_cities = 0;

    bool is_valid_tour() const {
        return degree_feasible && cycles.size() == 1 && cycles.front().size() == num_cities;
    }
    bool has_subtours() const { return degree_feasible && cycles.size() > 1; }
};

/// sum_{i<j} c_ij x_ij + lambda0 * sum_j (sum_{i != j} x_ij - 2)^2 over the
/// n(n-1)/2 edge variables.
Bqm build_degree_relaxation(const TspInstance& instance, double lambda0);

/// sum of the internal edges of q <= |q| - 1. Needs 3 <= |q| < n.
LinearConstraint subtour_constraint(const Subtour& q, const EdgeIndexer& indexer);

/// Only the first num_edges entries of `bits` are read, so auxiliary variables
/// may trail the edge variables.
TourAnalysis analyze(BitsView bits, const TspInstance& instance, const EdgeIndexer& indexer);

/// Cycle with the fewest cities; ties go to the lexicographically smallest
/// sorted city set. Throws ContractError when there is no sub-tour.
Subtour smallest_subtour(const TourAnalysis& analysis);

Bits tour_to_bits(const std::vector<std::size_t>& cities, const EdgeIndexer& indexer);

double tour_length(const std::vector<std::size_t>& cities, const TspInstance& instance);

/// Rotate to start at city 0 and orient toward the smaller neighbour.
std::vector<std::size_t> canonical_tour(std::vector<std::size_t> cities);

/// Exact optimum by Held-Karp dynamic programming over subsets containing
/// city 0. Memory is 2^(n-1) * (n-1) doubles plus as many parent bytes,
/// about 19 MB at n = 18.
Tour held_karp(const TspInstance& instance, std::size_t max_cities = 18);

}  // namespace qtsp
