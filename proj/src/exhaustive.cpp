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


#include "qtsp/exhaustive.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace qtsp {

namespace {

struct Neighbor {
    std::size_t index;
    double weight;
};

/// Connected block of auxiliary variables with its internal couplings.
struct AuxBlock {
    std::vector<std::size_t> vars;  // global indices, ascending
    struct Edge {
        std::size_t a, b;  // local indices
        double weight;
    };
    std::vector<Edge> edges;
};

class Enumerator {
 public:
    Enumerator(const Bqm& model, std::size_t num_primary, std::size_t max_block)
            : model_(model), num_primary_(num_primary) {
        const std::size_t n = model.num_vars();
        primary_linear_.assign(num_primary_, 0.0);
        primary_adj_.resize(num_primary_);
        aux_linear_.assign(n - num_primary_, 0.0);
        aux_primary_adj_.resize(num_primary_);

        for (const auto& [i, bias] : model.linear_terms()) {
            if (i < num_primary_) {
                primary_linear_[i] = bias;
            } else {
                aux_linear_[i - num_primary_] = bias;
            }
        }

        std::vector<std::size_t> parent(n - num_primary_);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&parent](std::size_t a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };

        std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> aux_edges;
        for (const auto& [key, bias] : model.quadratic_terms()) {
            auto [i, j] = key;
            if (j < num_primary_) {
                primary_adj_[i].push_back({j, bias});
                primary_adj_[j].push_back({i, bias});
            } else if (i < num_primary_) {
                aux_primary_adj_[i].push_back({j - num_primary_, bias});
            } else {
                std::size_t a = i - num_primary_, b = j - num_primary_;
                aux_edges.push_back({{a, b}, bias});
                parent[find(a)] = find(b);
            }
        }

        std::vector<std::size_t> block_of(n - num_primary_);
        std::vector<std::size_t> local_of(n - num_primary_);
        std::vector<std::size_t> root_block(n - num_primary_, static_cast<std::size_t>(-1));
        for (std::size_t a = 0; a < n - num_primary_; ++a) {
            std::size_t r = find(a);
            if (root_block[r] == static_cast<std::size_t>(-1)) {
                root_block[r] = blocks_.size();
                blocks_.emplace_back();
            }
            AuxBlock& block = blocks_[root_block[r]];
            block_of[a] = root_block[r];
            local_of[a] = block.vars.size();
            block.vars.push_back(a);
        }
        for (const auto& [ab, w] : aux_edges) {
            AuxBlock& block = blocks_[block_of[ab.first]];
            block.edges.push_back({local_of[ab.first], local_of[ab.second], w});
        }
        for (const auto& block : blocks_) {
            if (block.vars.size() > max_block) {
                throw SizeError("auxiliary block of " + std::to_string(block.vars.size()) +
                                " variables exceeds cap " + std::to_string(max_block));
            }
        }
    }

    /// Visit all 2^p primary assignments in Gray-code order. The callback
    /// receives (energy, code) where bit (p-1-i) of code is x_i, so numeric
    /// code order is lexicographic order of the primary bits.
    template <class Visit>
    void run(Visit&& visit) {
        const std::size_t p = num_primary_;
        Bits x(p, 0);
        std::vector<double> field = aux_linear_;
        double primary_energy = model_.offset();
        std::uint64_t code = 0;
        visit(primary_energy + aux_minimum(field), code);

        const std::uint64_t count = std::uint64_t{1} << p;
        for (std::uint64_t k = 1; k < count; ++k) {
            const int bit = std::countr_zero(k);
            const std::size_t i = p - 1 - static_cast<std::size_t>(bit);
            double local = primary_linear_[i];
            for (const auto& nb : primary_adj_[i]) {
                if (x[nb.index]) local += nb.weight;
            }
            const double sign = x[i] ? -1.0 : 1.0;
            primary_energy += sign * local;
            for (const auto& nb : aux_primary_adj_[i]) field[nb.index] += sign * nb.weight;
            x[i] ^= 1;
            code ^= std::uint64_t{1} << bit;
            visit(primary_energy + aux_minimum(field), code);
        }
    }

    /// Rebuild the full assignment for a primary code, choosing the
    /// lexicographically smallest minimizing auxiliary completion.
    Bits decode(std::uint64_t code) const {
        const std::size_t p = num_primary_;
        Bits bits(model_.num_vars(), 0);
        for (std::size_t i = 0; i < p; ++i) bits[i] = (code >> (p - 1 - i)) & 1U;
        std::vector<double> field = aux_linear_;
        for (std::size_t i = 0; i < p; ++i) {
            if (!bits[i]) continue;
            for (const auto& nb : aux_primary_adj_[i]) field[nb.index] += nb.weight;
        }
        for (const auto& block : blocks_) {
            std::uint64_t best_state = best_block_state(block, field).second;
            const std::size_t c = block.vars.size();
            for (std::size_t l = 0; l < c; ++l) {
                bits[num_primary_ + block.vars[l]] = (best_state >> (c - 1 - l)) & 1U;
            }
        }
        return bits;
    }

 private:
    static double block_energy(const AuxBlock& block, const std::vector<double>& field,
                               std::uint64_t state) {
        const std::size_t c = block.vars.size();
        auto on = [&](std::size_t l) { return (state >> (c - 1 - l)) & 1U; };
        double e = 0.0;
        for (std::size_t l = 0; l < c; ++l) {
            if (on(l)) e += field[block.vars[l]];
        }
        for (const auto& edge : block.edges) {
            if (on(edge.a) && on(edge.b)) e += edge.weight;
        }
        return e;
    }

    static std::pair<double, std::uint64_t> best_block_state(const AuxBlock& block,
                                                             const std::vector<double>& field) {
        const std::uint64_t states = std::uint64_t{1} << block.vars.size();
        double best = block_energy(block, field, 0);
        std::uint64_t best_state = 0;
        for (std::uint64_t s = 1; s < states; ++s) {
            double e = block_energy(block, field, s);
            if (e < best) {
                best = e;
                best_state = s;
            }
        }
        return {best, best_state};
    }

    double aux_minimum(const std::vector<double>& field) const {
        double total = 0.0;
        for (const auto& block : blocks_) total += best_block_state(block, field).first;
        return total;
    }

    const Bqm& model_;
    std::size_t num_primary_;
    std::vector<double> primary_linear_;
    std::vector<std::vector<Neighbor>> primary_adj_;
    std::vector<double> aux_linear_;
    std::vector<std::vector<Neighbor>> aux_primary_adj_;
    std::vector<AuxBlock> blocks_;
};

}  // namespace

SampleSet sample_exhaustive(const Bqm& model, std::uint64_t top_k, const ExhaustiveOptions& options) {
    const std::size_t p = std::min(options.num_primary, model.num_vars());
    if (p > options.max_vars || p >= 64) {
        throw SizeError("exhaustive enumeration over " + std::to_string(p) +
                        " variables exceeds cap " + std::to_string(options.max_vars));
    }
    Enumerator enumerator(model, p, options.max_block);
    if (top_k == 0) return SampleSet("exhaustive");

    const std::uint64_t count = std::uint64_t{1} << p;
    using Entry = std::pair<double, std::uint64_t>;
    std::vector<Entry> kept;
    if (top_k >= count) {
        kept.reserve(count);
        enumerator.run([&kept](double e, std::uint64_t code) { kept.emplace_back(e, code); });
    } else {
        // max-heap on (energy, code): the top is the worst kept entry
        std::priority_queue<Entry> heap;
        enumerator.run([&heap, top_k](double e, std::uint64_t code) {
            if (heap.size() < top_k) {
                heap.emplace(e, code);
            } else if (Entry{e, code} < heap.top()) {
                heap.pop();
                heap.emplace(e, code);
            }
        });
        kept.reserve(heap.size());
        while (!heap.empty()) {
            kept.push_back(heap.top());
            heap.pop();
        }
    }

    std::vector<Sample> samples;
    samples.reserve(kept.size());
    for (const auto& [e, code] : kept) {
        Bits bits = enumerator.decode(code);
        double energy = model.energy(bits);
        samples.push_back({std::move(bits), energy, 1});
    }
    return SampleSet(std::move(samples), "exhaustive");
}

SampleSet ground_states_exhaustive(const Bqm& model, std::size_t max_vars) {
    if (model.num_vars() > max_vars) {
        throw SizeError("exhaustive enumeration over " + std::to_string(model.num_vars()) +
                        " variables exceeds cap " + std::to_string(max_vars));
    }
    ExhaustiveOptions options;
    options.max_vars = max_vars;
    return sample_exhaustive(model, std::uint64_t{1} << model.num_vars(), options);
}

}  // namespace qtsp
