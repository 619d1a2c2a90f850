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
#include <functional>

#include "qtsp/penalty.hpp"
#include "qtsp/pipeline.hpp"
#include "qtsp/sample_set.hpp"
#include "qtsp/sampler.hpp"
#include "qtsp/tsp.hpp"

namespace qtsp {

using PenaltyObjective = std::function<double(const PenaltyConfig&)>;

struct TunerOptions {
    std::size_t max_evaluations = 60;
    /// Initial simplex edge length for every weight.
    double initial_step = 0.25;
    /// Stop once the simplex size falls below this.
    double tolerance = 1e-3;
};

struct TuningResult {
    PenaltyConfig config;
    double objective = 0.0;
    PenaltyConfig initial;
    double initial_objective = 0.0;
    std::size_t evaluations = 0;
};

/// Derivative-free local minimization of `objective` over (lambda0, lambda1,
/// lambda2), each projected onto [0, inf). Nelder-Mead simplex from GSL. The
/// returned config is the best point evaluated, so its objective never exceeds
/// the initial one.
TuningResult minimize_penalty_objective(const PenaltyObjective& objective, const PenaltyConfig& initial,
                                        const TunerOptions& options = {});

/// Multiplicity-weighted mean energy of the samples accepted by `feasible`.
/// Without any feasible sample the result is the largest sampled energy plus
/// one; an empty set yields 0.
double feasible_mean_energy(const SampleSet& samples, const std::function<bool(BitsView)>& feasible);

/// Degree constraints hold on the edge bits and every fixed sub-tour
/// constraint is respected.
bool satisfies_constraints(BitsView bits, const TspInstance& instance, const EdgeIndexer& indexer,
                           const SubtourSet& subtours);

/// Mean energy of the constraint-satisfying samples of the encoded model,
/// sampled with a fixed stream so repeated evaluations are deterministic.
PenaltyObjective make_feasible_mean_objective(const TspInstance& instance, const SubtourSet& fixed,
                                              const Sampler& sampler,
                                              Encoding encoding = Encoding::Unbalanced);

TuningResult tune_lambdas(const TspInstance& instance, const SubtourSet& fixed, const Sampler& sampler,
                          const PenaltyConfig& initial, const TunerOptions& options = {},
                          Encoding encoding = Encoding::Unbalanced);

}  // namespace qtsp
