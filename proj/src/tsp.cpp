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


#include "qtsp/tsp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <string>

namespace qtsp {

TspInstance::TspInstance(Coordinates coords) : coords_(std::move(coords)) {
    const Eigen::Index n = coords_.rows();
    if (n < 3) throw SizeError("a TSP instance needs at least 3 cities, got " + std::to_string(n));
    if (!coords_.allFinite()) throw ContractError("city coordinates must be finite");
    distances_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        distances_(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (coords_.row(i) - coords_.row(j)).norm();
            distances_(i, j) = d;
            distances_(j, i) = d;
        }
    }
}

TspInstance generate_instance(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw SizeError("a TSP instance needs at least 3 cities, got " + std::to_string(n));
    std::mt19937_64 engine(seed);
    auto draw = [&engine] {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        return 2.0 * u - 1.0;
    };
    Coordinates coords(static_cast<Eigen::Index>(n), 2);
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        coords(i, 0) = draw();
        coords(i, 1) = draw();
    }
    return TspInstance(std::move(coords));
}

EdgeIndexer::EdgeIndexer(std::size_t num_cities) : n_(num_cities) {
    if (n_ < 2) throw SizeError("edge indexing needs at least 2 cities");
    edges_.reserve(num_edges());
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) edges_.emplace_back(i, j);
    }
}

std::size_t EdgeIndexer::index(std::size_t i, std::size_t j) const {
    if (i == j || i >= n_ || j >= n_) {
        throw DimensionError("no edge between cities " + std::to_string(i) + " and " + std::to_string(j));
    }
    if (i > j) std::swap(i, j);
    // edges before row i: sum_{r<i} (n-1-r)
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

Subtour::Subtour(std::vector<std::size_t> c) : cities(std::move(c)) {
    std::sort(cities.begin(), cities.end());
    cities.erase(std::unique(cities.begin(), cities.end()), cities.end());
}

Bqm build_degree_relaxation(const TspInstance& instance, double lambda0) {
    const std::size_t n = instance.num_cities();
    const EdgeIndexer indexer(n);
    Bqm model(indexer.num_edges());
    for (std::size_t k = 0; k < indexer.num_edges(); ++k) {
        const auto [i, j] = indexer.edge(k);
        model.add_linear(k, instance.distance(i, j));
    }
    std::vector<std::pair<std::size_t, double>> incident;
    for (std::size_t city = 0; city < n; ++city) {
        incident.clear();
        for (std::size_t other = 0; other < n; ++other) {
            if (other != city) incident.emplace_back(indexer.index(city, other), 1.0);
        }
        add_squared_linear<double>(model, incident, -2.0, lambda0);
    }
    return model;
}

LinearConstraint subtour_constraint(const Subtour& q, const EdgeIndexer& indexer) {
    const std::size_t size = q.size();
    if (size < 3 || size >= indexer.num_cities()) {
        throw ContractError("sub-tour must have between 3 and n-1 cities, got " + std::to_string(size));
    }
    if (q.cities.back() >= indexer.num_cities()) {
        throw DimensionError("sub-tour names a city outside the instance");
    }
    LinearConstraint c;
    c.sense = Sense::LessEqual;
    c.rhs = static_cast<std::int64_t>(size) - 1;
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = a + 1; b < size; ++b) c.terms[indexer.index(q.cities[a], q.cities[b])] = 1;
    }
    return c;
}

TourAnalysis analyze(BitsView bits, const TspInstance& instance, const EdgeIndexer& indexer) {
    const std::size_t n = instance.num_cities();
    if (indexer.num_cities() != n) throw DimensionError("indexer does not match instance");
    if (bits.size() < indexer.num_edges()) {
        throw DimensionError("assignment has " + std::to_string(bits.size()) + " entries, need " +
                             std::to_string(indexer.num_edges()) + " edge variables");
    }
    TourAnalysis out;
    out.num_cities = n;
    std::vector<std::vector<std::size_t>> adjacent(n);
    for (std::size_t k = 0; k < indexer.num_edges(); ++k) {
        if (!bits[k]) continue;
        const auto [i, j] = indexer.edge(k);
        adjacent[i].push_back(j);
        adjacent[j].push_back(i);
        out.total_distance += instance.distance(i, j);
    }
    out.degree_feasible = std::all_of(adjacent.begin(), adjacent.end(),
                                      [](const auto& a) { return a.size() == 2; });
    if (!out.degree_feasible) return out;

    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> cycle{start};
        seen[start] = true;
        std::size_t prev = start;
        std::size_t cur = std::min(adjacent[start][0], adjacent[start][1]);
        while (cur != start) {
            cycle.push_back(cur);
            seen[cur] = true;
            const std::size_t next = adjacent[cur][0] == prev ? adjacent[cur][1] : adjacent[cur][0];
            prev = cur;
            cur = next;
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

Subtour smallest_subtour(const TourAnalysis& analysis) {
    if (!analysis.has_subtours()) throw ContractError("analysis contains no sub-tour");
    std::optional<Subtour> best;
    for (const auto& cycle : analysis.cycles) {
        Subtour candidate(cycle);
        if (!best || candidate.size() < best->size() ||
            (candidate.size() == best->size() && candidate < *best)) {
            best = std::move(candidate);
        }
    }
    return *best;
}

Bits tour_to_bits(const std::vector<std::size_t>& cities, const EdgeIndexer& indexer) {
    Bits bits(indexer.num_edges(), 0);
    for (std::size_t k = 0; k < cities.size(); ++k) {
        bits[indexer.index(cities[k], cities[(k + 1) % cities.size()])] = 1;
    }
    return bits;
}

double tour_length(const std::vector<std::size_t>& cities, const TspInstance& instance) {
    double total = 0.0;
    for (std::size_t k = 0; k < cities.size(); ++k) {
        total += instance.distance(cities[k], cities[(k + 1) % cities.size()]);
    }
    return total;
}

std::vector<std::size_t> canonical_tour(std::vector<std::size_t> cities) {
    if (cities.size() < 3) return cities;
    auto first = std::min_element(cities.begin(), cities.end());
    std::rotate(cities.begin(), first, cities.end());
    if (cities.back() < cities[1]) std::reverse(cities.begin() + 1, cities.end());
    return cities;
}

Tour held_karp(const TspInstance& instance, std::size_t max_cities) {
    const std::size_t n = instance.num_cities();
    if (n > max_cities) {
        throw SizeError("Held-Karp on " + std::to_string(n) + " cities exceeds cap " +
                        std::to_string(max_cities));
    }
    // cities 1..n-1 are bits 0..m-1
    const std::size_t m = n - 1;
    const std::size_t subsets = std::size_t{1} << m;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(subsets * m, inf);
    std::vector<std::uint8_t> parent(subsets * m, 0);
    auto at = [m](std::size_t mask, std::size_t j) { return mask * m + j; };

    for (std::size_t j = 0; j < m; ++j) cost[at(std::size_t{1} << j, j)] = instance.distance(0, j + 1);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const double here = cost[at(mask, j)];
            if (here == inf) continue;
            for (std::size_t k = 0; k < m; ++k) {
                if (mask & (std::size_t{1} << k)) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const double candidate = here + instance.distance(j + 1, k + 1);
                if (candidate < cost[at(next, k)]) {
                    cost[at(next, k)] = candidate;
                    parent[at(next, k)] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    const std::size_t full = subsets - 1;
    double best = inf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double candidate = cost[at(full, j)] + instance.distance(j + 1, 0);
        if (candidate < best) {
            best = candidate;
            last = j;
        }
    }

    std::vector<std::size_t> order;
    std::size_t mask = full;
    std::size_t j = last;
    while (true) {
        order.push_back(j + 1);
        const std::size_t prev_mask = mask & ~(std::size_t{1} << j);
        if (prev_mask == 0) break;
        j = parent[at(mask, j)];
        mask = prev_mask;
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());

    Tour tour;
    tour.cities = canonical_tour(std::move(order));
    tour.distance = best;
    return tour;
}

}  // namespace qtsp
