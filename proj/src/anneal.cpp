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


#include "qtsp/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qtsp {

namespace {

std::mt19937_64 read_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t read) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffU); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(read), hi(read)};
    return std::mt19937_64(seq);
}

// 53 random mantissa bits, uniform on [0, 1)
inline double unit_uniform(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

void AnnealSchedule::validate() const {
    if (!(beta_min > 0.0) || !(beta_max > beta_min) || !std::isfinite(beta_max)) {
        throw ContractError("annealing schedule needs 0 < beta_min < beta_max");
    }
    if (num_sweeps < 1) throw ContractError("annealing schedule needs at least one sweep");
}

std::vector<double> AnnealSchedule::betas() const {
    validate();
    std::vector<double> out(num_sweeps);
    if (num_sweeps == 1) {
        out[0] = beta_max;
        return out;
    }
    const double last = static_cast<double>(num_sweeps - 1);
    for (std::size_t k = 0; k < num_sweeps; ++k) {
        const double t = static_cast<double>(k) / last;
        out[k] = kind == ScheduleKind::Geometric ? beta_min * std::pow(beta_max / beta_min, t)
                                                 : beta_min + (beta_max - beta_min) * t;
    }
    out.front() = beta_min;
    out.back() = beta_max;
    return out;
}

void SamplerConfig::validate() const {
    if (num_reads < 1) throw ContractError("sampler needs at least one read");
    schedule.validate();
}

IncidenceModel::IncidenceModel(const Bqm& model)
        : linear_(model.num_vars(), 0.0), row_start_(model.num_vars() + 1, 0) {
    for (const auto& [i, bias] : model.linear_terms()) linear_[i] = bias;
    for (const auto& [key, bias] : model.quadratic_terms()) {
        ++row_start_[key.first + 1];
        ++row_start_[key.second + 1];
    }
    std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
    neighbors_.resize(row_start_.back());
    std::vector<std::size_t> cursor(row_start_.begin(), row_start_.end() - 1);
    for (const auto& [key, bias] : model.quadratic_terms()) {
        neighbors_[cursor[key.first]++] = {key.second, bias};
        neighbors_[cursor[key.second]++] = {key.first, bias};
    }
}

double IncidenceModel::delta(BitsView bits, std::size_t i) const {
    if (bits.size() != num_vars()) {
        throw DimensionError("assignment length does not match model");
    }
    if (i >= num_vars()) {
        throw DimensionError("flip index " + std::to_string(i) + " out of range");
    }
    double local = linear_[i];
    for (const auto& nb : neighbors(i)) {
        if (bits[nb.index]) local += nb.weight;
    }
    return bits[i] ? -local : local;
}

double incidence_energy_delta(const Bqm& model, BitsView bits, std::size_t flip_index) {
    return IncidenceModel(model).delta(bits, flip_index);
}

SampleSet sample_sa(const Bqm& model, const SamplerConfig& config, std::uint64_t stream) {
    config.validate();
    const std::size_t n = model.num_vars();
    if (n == 0) throw ContractError("cannot anneal a model without variables");

    const IncidenceModel adjacency(model);
    const std::vector<double> betas = config.schedule.betas();

    std::vector<Sample> samples;
    samples.reserve(config.num_reads);
    Bits x(n);
    std::vector<double> field(n);
    std::vector<std::size_t> order(n);

    for (std::size_t read = 0; read < config.num_reads; ++read) {
        std::mt19937_64 engine = read_engine(config.seed, stream, read);
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>(engine() & 1U);

        // field[i] = linear_i + sum_j w_ij x_j, so flipping i changes the
        // energy by +field[i] (0 -> 1) or -field[i] (1 -> 0)
        for (std::size_t i = 0; i < n; ++i) {
            double f = adjacency.linear(i);
            for (const auto& nb : adjacency.neighbors(i)) {
                if (x[nb.index]) f += nb.weight;
            }
            field[i] = f;
        }
        std::iota(order.begin(), order.end(), std::size_t{0});

        for (double beta : betas) {
            std::shuffle(order.begin(), order.end(), engine);
            for (std::size_t i : order) {
                const double delta = x[i] ? -field[i] : field[i];
                bool accept = delta <= 0.0;
                if (!accept) {
                    const double exponent = beta * delta;
                    accept = exponent < 40.0 && unit_uniform(engine) < std::exp(-exponent);
                }
                if (!accept) continue;
                x[i] ^= 1U;
                const double sign = x[i] ? 1.0 : -1.0;
                for (const auto& nb : adjacency.neighbors(i)) field[nb.index] += sign * nb.weight;
            }
        }
        samples.push_back({x, model.energy(x), 1});
    }
    return SampleSet(std::move(samples), "simulated_annealing");
}

}  // namespace qtsp
