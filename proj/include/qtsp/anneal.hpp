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
#include <span>
#include <vector>

#include "qtsp/bqm.hpp"
#include "qtsp/sample_set.hpp"

namespace qtsp {

enum class ScheduleKind { Geometric, Linear };

/// Inverse-temperature schedule. The defaults are the reference simulated
/// annealer's: beta in [0.09, 9.6], geometric, 1000 sweeps.
struct AnnealSchedule {
    double beta_min = 0.09;
    double beta_max = 9.6;
    std::size_t num_sweeps = 1000;
    ScheduleKind kind = ScheduleKind::Geometric;

    void validate() const;

    /// One beta per sweep. The first entry is beta_min and the last is
    /// beta_max, both exactly; a single sweep runs at beta_max.
    std::vector<double> betas() const;
};

struct SamplerConfig {
    std::size_t num_reads = 5000;
    std::uint64_t seed = 0;
    AnnealSchedule schedule;

    void validate() const;
};

/// Compressed adjacency view of a model for O(degree) flip deltas.
class IncidenceModel {
 public:
    struct Neighbor {
        std::size_t index;
        double weight;
    };

    explicit IncidenceModel(const Bqm& model);

    std::size_t num_vars() const noexcept { return linear_.size(); }
    double linear(std::size_t i) const { return linear_[i]; }
    std::span<const Neighbor> neighbors(std::size_t i) const {
        return {neighbors_.data() + row_start_[i], neighbors_.data() + row_start_[i + 1]};
    }

    /// evaluate(flip(bits, i)) - evaluate(bits).
    double delta(BitsView bits, std::size_t i) const;

 private:
    std::vector<double> linear_;
    std::vector<std::size_t> row_start_;
    std::vector<Neighbor> neighbors_;
};

/// Energy change from flipping variable `flip_index`, in O(degree) once the
/// adjacency is built.
double incidence_energy_delta(const Bqm& model, BitsView bits, std::size_t flip_index);

/// Single-flip Metropolis simulated annealing on the binary model.
///
/// Every read starts from uniformly random bits and performs one sweep per
/// schedule entry; a sweep proposes a flip of every variable once, in an order
/// reshuffled each sweep. Read r uses its own std::mt19937_64 seeded from
/// std::seed_seq{seed (two 32-bit halves), stream (two halves), r (two halves)},
/// so results do not depend on how reads are scheduled.
SampleSet sample_sa(const Bqm& model, const SamplerConfig& config, std::uint64_t stream = 0);

}  // namespace qtsp
