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
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtsp/bqm.hpp"
#include "qtsp/penalty.hpp"
#include "qtsp/sample_set.hpp"
#include "qtsp/sampler.hpp"
#include "qtsp/tsp.hpp"

namespace qtsp {

enum class Encoding { Relaxation, Slack, Unbalanced };

std::string_view to_string(Encoding encoding);
Encoding parse_encoding(std::string_view text);

/// How the sub-tour constraint set evolves between iterations.
enum class ConstraintMode {
    /// Cleared and rebuilt from the recorded relaxation solutions each iteration.
    Reset,
    /// New constraints are added to the existing set.
    Cumulative,
};

std::string_view to_string(ConstraintMode mode);
ConstraintMode parse_constraint_mode(std::string_view text);

using SubtourSet = std::set<Subtour>;

/// Degree relaxation plus every constraint in `subtours` under `encoding`
/// (ignored for Relaxation). Slack bits are appended after the edge variables
/// in the iteration order of the set.
Bqm build_encoded_model(const TspInstance& instance, const SubtourSet& subtours, Encoding encoding,
                        const PenaltyConfig& lambdas);

struct ValidSolution {
    Tour tour;
    std::uint64_t multiplicity = 1;
};

struct RelaxationSolution {
    Bits edges;
    double distance = 0.0;
    Subtour smallest;
};

struct EliminationState {
    double min_distance = std::numeric_limits<double>::infinity();
    SubtourSet subtour_constraints;
    /// Union of every constraint set used or produced.
    SubtourSet discovered;
    std::vector<ValidSolution> solutions;
    /// Degree-feasible bitstrings with sub-tours, deduplicated by bits.
    std::vector<RelaxationSolution> relaxation_solutions;
    std::size_t iteration = 0;
};

struct PipelineOptions {
    Encoding encoding = Encoding::Unbalanced;
    PenaltyConfig lambdas = PenaltyConfig::unbalanced_defaults();
    std::size_t max_iterations = 10;
    ConstraintMode mode = ConstraintMode::Reset;
    /// Relative tolerance on "distance <= min_distance".
    double distance_rtol = 1e-9;
    /// Held-Karp reference is computed up to this many cities.
    std::size_t reference_cap = 18;
};

/// Per-iteration bookkeeping.
struct IterationRecord {
    std::size_t num_constraints = 0;
    ResourceCounts resources;
    std::uint64_t total_reads = 0;
    std::uint64_t valid_reads = 0;
    double min_distance = std::numeric_limits<double>::infinity();
};

struct RunReport {
    Encoding encoding = Encoding::Unbalanced;
    std::size_t n = 0;
    double valid_probability = 0.0;
    /// NaN when no valid tour was sampled.
    double mean_distance = std::numeric_limits<double>::quiet_NaN();
    double std_distance = std::numeric_limits<double>::quiet_NaN();
    /// +inf when no valid tour was sampled.
    double min_distance = std::numeric_limits<double>::infinity();
    std::size_t qubits = 0;
    std::size_t connections = 0;
    std::size_t num_vars = 0;
    std::size_t iterations_used = 0;
    std::optional<double> optimum_reference;
};

struct PipelineResult {
    EliminationState state;
    RunReport report;
    std::vector<IterationRecord> iterations;
    std::vector<SampleSet> samples;
    /// Best valid tour when one was found.
    std::optional<Tour> best_tour;
};

/// Iterative sub-tour elimination. Each iteration builds the degree relaxation,
/// encodes the current constraint set, samples, and sorts every sample into
/// degree-infeasible (dropped), valid tour (recorded, min_distance updated) or
/// relaxation solution with sub-tours (recorded). The constraint set is then
/// rebuilt from the smallest sub-tour of every recorded relaxation solution
/// whose distance does not exceed min_distance. Stops after max_iterations or
/// when an iteration contributes no constraint that was not already in use.
PipelineResult eliminate_subtours(const TspInstance& instance, const PipelineOptions& options,
                                  const Sampler& sampler);

/// Metrics over every sample in `all_samples`: the share of reads that decode
/// to a valid tour, and multiplicity-weighted mean, population standard
/// deviation and minimum of their distances.
RunReport compute_report(const EliminationState& state, std::span<const SampleSet> all_samples,
                         const ResourceCounts& final_resources, const TspInstance& instance,
                         Encoding encoding, std::size_t reference_cap = 18);

}  // namespace qtsp
