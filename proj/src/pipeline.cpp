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


#include "qtsp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qtsp {

std::string_view to_string(Encoding encoding) {
    switch (encoding) {
        case Encoding::Relaxation: return "relaxation";
        case Encoding::Slack: return "slack";
        case Encoding::Unbalanced: return "unbalanced";
    }
    return "unknown";
}

Encoding parse_encoding(std::string_view text) {
    if (text == "relaxation") return Encoding::Relaxation;
    if (text == "slack") return Encoding::Slack;
    if (text == "unbalanced") return Encoding::Unbalanced;
    throw ContractError("unknown encoding '" + std::string(text) + "'");
}

std::string_view to_string(ConstraintMode mode) {
    return mode == ConstraintMode::Reset ? "reset" : "cumulative";
}

ConstraintMode parse_constraint_mode(std::string_view text) {
    if (text == "reset") return ConstraintMode::Reset;
    if (text == "cumulative") return ConstraintMode::Cumulative;
    throw ContractError("unknown constraint mode '" + std::string(text) + "'");
}

Bqm build_encoded_model(const TspInstance& instance, const SubtourSet& subtours, Encoding encoding,
                        const PenaltyConfig& lambdas) {
    lambdas.validate();
    Bqm model = build_degree_relaxation(instance, lambdas.lambda0);
    if (encoding == Encoding::Relaxation) return model;
    const EdgeIndexer indexer(instance.num_cities());
    for (const auto& q : subtours) {
        const LinearConstraint c = subtour_constraint(q, indexer);
        if (encoding == Encoding::Slack) {
            encode_inequality_slack(model, c, lambdas.lambda1);
        } else {
            encode_inequality_unbalanced(model, c, lambdas.lambda1, lambdas.lambda2);
        }
    }
    return model;
}

PipelineResult eliminate_subtours(const TspInstance& instance, const PipelineOptions& options,
                                  const Sampler& sampler) {
    if (options.max_iterations < 1) throw ContractError("need at least one iteration");
    options.lambdas.validate();

    const EdgeIndexer indexer(instance.num_cities());
    const std::size_t num_edges = indexer.num_edges();

    PipelineResult result;
    EliminationState& state = result.state;
    std::set<Bits> seen_relaxation;
    ResourceCounts last_resources;

    for (std::size_t k = 0; k < options.max_iterations; ++k) {
        const Bqm model = build_encoded_model(instance, state.subtour_constraints, options.encoding,
                                              options.lambdas);
        last_resources = resource_counts(model);
        SampleSet samples = sampler.sample(model, SampleRequest{num_edges, k});

        IterationRecord record;
        record.num_constraints = state.subtour_constraints.size();
        record.resources = last_resources;
        for (const Sample& s : samples) {
            record.total_reads += s.multiplicity;
            const BitsView edges(s.bits.data(), num_edges);
            const TourAnalysis analysis = analyze(edges, instance, indexer);
            if (!analysis.degree_feasible) continue;
            if (analysis.is_valid_tour()) {
                record.valid_reads += s.multiplicity;
                Tour tour{canonical_tour(analysis.cycles.front()), analysis.total_distance};
                if (tour.distance < state.min_distance) {
                    state.min_distance = tour.distance;
                    result.best_tour = tour;
                }
                state.solutions.push_back({std::move(tour), s.multiplicity});
            } else {
                Bits key(edges.begin(), edges.end());
                if (seen_relaxation.insert(key).second) {
                    state.relaxation_solutions.push_back(
                            {std::move(key), analysis.total_distance, smallest_subtour(analysis)});
                }
            }
        }
        record.min_distance = state.min_distance;
        result.iterations.push_back(record);
        result.samples.push_back(std::move(samples));
        state.iteration = k + 1;

        SubtourSet next;
        if (options.mode == ConstraintMode::Cumulative) next = state.subtour_constraints;
        const double limit = state.min_distance * (1.0 + options.distance_rtol);
        for (const auto& relaxed : state.relaxation_solutions) {
            if (relaxed.distance <= limit) next.insert(relaxed.smallest);
        }

        const bool added = std::any_of(next.begin(), next.end(), [&](const Subtour& q) {
            return !state.subtour_constraints.contains(q);
        });
        state.discovered.insert(next.begin(), next.end());
        if (options.encoding == Encoding::Relaxation || !added) break;
        state.subtour_constraints = std::move(next);
    }

    result.report = compute_report(state, result.samples, last_resources, instance, options.encoding,
                                   options.reference_cap);
    return result;
}

RunReport compute_report(const EliminationState& state, std::span<const SampleSet> all_samples,
                         const ResourceCounts& final_resources, const TspInstance& instance,
                         Encoding encoding, std::size_t reference_cap) {
    RunReport report;
    report.encoding = encoding;
    report.n = instance.num_cities();
    report.qubits = final_resources.qubits;
    report.connections = final_resources.connections;
    report.num_vars = final_resources.num_vars;
    report.iterations_used = state.iteration;

    const EdgeIndexer indexer(instance.num_cities());
    const std::size_t num_edges = indexer.num_edges();
    std::uint64_t total = 0;
    std::uint64_t valid = 0;
    double sum = 0.0;
    double min_distance = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::uint64_t>> distances;
    for (const SampleSet& set : all_samples) {
        for (const Sample& s : set) {
            total += s.multiplicity;
            if (s.bits.size() < num_edges) throw DimensionError("sample shorter than edge set");
            const TourAnalysis analysis = analyze(BitsView(s.bits.data(), num_edges), instance, indexer);
            if (!analysis.is_valid_tour()) continue;
            valid += s.multiplicity;
            sum += analysis.total_distance * static_cast<double>(s.multiplicity);
            min_distance = std::min(min_distance, analysis.total_distance);
            distances.emplace_back(analysis.total_distance, s.multiplicity);
        }
    }
    report.valid_probability = total == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(total);
    if (valid > 0) {
        const double mean = sum / static_cast<double>(valid);
        double ss = 0.0;
        for (const auto& [d, m] : distances) ss += (d - mean) * (d - mean) * static_cast<double>(m);
        report.mean_distance = mean;
        report.std_distance = std::sqrt(ss / static_cast<double>(valid));
        report.min_distance = min_distance;
    }
    if (instance.num_cities() <= reference_cap) {
        report.optimum_reference = held_karp(instance, reference_cap).distance;
    }
    return report;
}

}  // namespace qtsp
