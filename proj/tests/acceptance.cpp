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


// Acceptance run: each check prints one PASS/FAIL line; the exit status is
// nonzero if any check fails. Slow by design (roughly ten minutes).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qtsp/anneal.hpp"
#include "qtsp/exhaustive.hpp"
#include "qtsp/ising.hpp"
#include "qtsp/penalty.hpp"
#include "qtsp/pipeline.hpp"
#include "qtsp/tsp.hpp"
#include "qtsp/tuning.hpp"

using namespace qtsp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %-38s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

// Remembers sample sets per (model, stream) so that two runs sharing an
// identical first model sample it once; results are unchanged because the
// annealer is deterministic in (model, seed, stream).
class CachingSampler : public Sampler {
 public:
    explicit CachingSampler(const Sampler& inner) : inner_(inner) {}

    SampleSet sample(const Bqm& model, const SampleRequest& request) const override {
        for (const auto& entry : cache_) {
            if (entry.stream == request.stream && entry.model == model) return entry.samples;
        }
        SampleSet samples = inner_.sample(model, request);
        cache_.push_back({model, request.stream, samples});
        return samples;
    }

    std::string name() const override { return inner_.name(); }

 private:
    struct Entry {
        Bqm model;
        std::uint64_t stream;
        SampleSet samples;
    };
    const Sampler& inner_;
    mutable std::vector<Entry> cache_;
};

void relaxation_resource_table() {
    const auto start = Clock::now();
    const std::map<std::size_t, std::pair<std::size_t, std::size_t>> table{
            {6, {15, 60}},   {8, {28, 168}},   {10, {45, 360}},  {11, {55, 495}},
            {12, {66, 660}}, {13, {78, 858}},  {14, {91, 1092}}, {15, {105, 1365}}};
    bool ok = true;
    for (const auto& [n, expected] : table) {
        const auto counts = resource_counts(build_degree_relaxation(generate_instance(n, 1), 0.88));
        ok = ok && counts.qubits == expected.first && counts.connections == expected.second;
    }
    const double elapsed = seconds_since(start);
    report("relaxation resource table", ok && elapsed < 1.0, fmt("8 sizes, %.3f s", elapsed));
}

void slack_variable_growth() {
    bool ok = true;
    std::size_t six_slack = 0, six_unbalanced = 0;
    for (std::size_t n = 4; n <= 15; ++n) {
        const auto instance = generate_instance(n, 2);
        const LinearConstraint c = subtour_constraint(Subtour({0, 1, 2}), EdgeIndexer(n));
        Bqm slack = build_degree_relaxation(instance, 0.88);
        const std::size_t before = slack.num_vars();
        encode_inequality_slack(slack, c, 0.88);
        Bqm unbalanced = build_degree_relaxation(instance, 0.88);
        encode_inequality_unbalanced(unbalanced, c, 0.46, 0.54);
        ok = ok && slack.num_vars() == before + 2 && unbalanced.num_vars() == before;
        if (n == 6) {
            six_slack = slack.num_vars();
            six_unbalanced = unbalanced.num_vars();
        }
    }
    ok = ok && six_slack == 17 && six_unbalanced == 15;
    report("slack variable growth", ok, fmt("6 cities: slack %zu, unbalanced %zu", six_slack, six_unbalanced));
}

void qubo_ising_equivalence() {
    const auto start = Clock::now();
    std::mt19937_64 rng(2024);
    double worst_energy = 0.0, worst_coef = 0.0;
    for (int m = 0; m < 100; ++m) {
        const std::size_t n = 1 + static_cast<std::size_t>(m) % 12;
        const Bqm model = testing::random_model(n, rng);
        const Ising ising = to_ising(model);
        testing::for_each_assignment(n, [&](const Bits& x) {
            worst_energy = std::max(worst_energy,
                                    std::abs(testing::polynomial_energy(model, x) - ising.energy(spins_from_bits(x))));
        });
        const Bqm back = from_ising(ising);
        worst_coef = std::max(worst_coef, std::abs(back.offset() - model.offset()));
        for (std::size_t i = 0; i < n; ++i) {
            worst_coef = std::max(worst_coef, std::abs(back.linear(i) - model.linear(i)));
            for (std::size_t j = i + 1; j < n; ++j) {
                worst_coef = std::max(worst_coef, std::abs(back.quadratic(i, j) - model.quadratic(i, j)));
            }
        }
    }
    const double elapsed = seconds_since(start);
    report("qubo/ising equivalence", worst_energy <= 1e-9 && worst_coef <= 1e-12 && elapsed < 30.0,
           fmt("energy err %.2e, coef err %.2e, %.1f s", worst_energy, worst_coef, elapsed));
}

void exact_pipeline_optimality() {
    const auto start = Clock::now();
    const ExactSampler sampler;
    int agree = 0, total = 0;
    for (std::size_t n : {5u, 6u}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto instance = generate_instance(n, seed);
            const double optimum = held_karp(instance).distance;
            for (Encoding encoding : {Encoding::Slack, Encoding::Unbalanced}) {
                PipelineOptions options;
                options.encoding = encoding;
                options.lambdas = encoding == Encoding::Slack ? PenaltyConfig::slack_defaults()
                                                              : PenaltyConfig::unbalanced_defaults();
                const auto result = eliminate_subtours(instance, options, sampler);
                ++total;
                if (std::abs(result.report.min_distance - optimum) <= 1e-9) ++agree;
            }
        }
    }
    const double elapsed = seconds_since(start);
    report("exact pipeline optimality", agree == total && elapsed < 120.0,
           fmt("%d/%d runs at the optimum, %.1f s", agree, total, elapsed));
}

struct SmallCase {
    TspInstance instance;
    SubtourSet constraints;
    double optimum;
    double longest;
};

std::vector<SmallCase> small_cases() {
    std::vector<SmallCase> cases;
    const ExactSampler sampler;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SmallCase c{generate_instance(6, seed), {}, 0.0, 0.0};
        PipelineOptions options;
        options.encoding = Encoding::Slack;
        options.lambdas = PenaltyConfig::slack_defaults();
        c.constraints = eliminate_subtours(c.instance, options, sampler).state.discovered;
        c.optimum = testing::brute_force_optimum(c.instance);
        c.longest = testing::brute_force_longest(c.instance);
        cases.push_back(std::move(c));
    }
    return cases;
}

void slack_ground_state(const std::vector<SmallCase>& cases) {
    int exact = 0;
    const EdgeIndexer indexer(6);
    for (const auto& c : cases) {
        const double big = 2.0 * c.longest;
        const Bqm model = build_encoded_model(c.instance, c.constraints, Encoding::Slack, {big, big, 0.0});
        ExhaustiveOptions options;
        options.num_primary = indexer.num_edges();
        const Sample ground = sample_exhaustive(model, 1, options).lowest();
        const auto analysis = analyze(BitsView(ground.bits.data(), indexer.num_edges()), c.instance, indexer);
        if (analysis.is_valid_tour() && std::abs(analysis.total_distance - c.optimum) <= 1e-9) ++exact;
    }
    report("slack ground state is the optimum", exact == static_cast<int>(cases.size()),
           fmt("%d/%zu instances", exact, cases.size()));
}

void unbalanced_vicinity(const std::vector<SmallCase>& cases) {
    std::vector<std::size_t> ranks;
    const EdgeIndexer indexer(6);
    for (const auto& c : cases) {
        const Bqm model = build_encoded_model(c.instance, c.constraints, Encoding::Unbalanced,
                                              PenaltyConfig::unbalanced_defaults());
        double optimal_energy = std::numeric_limits<double>::infinity();
        for (const auto& tour : testing::brute_force_tours(c.instance)) {
            if (std::abs(tour.distance - c.optimum) <= 1e-9) {
                optimal_energy = std::min(optimal_energy, evaluate(model, tour_to_bits(tour.cities, indexer)));
            }
        }
        std::size_t below = 0;
        testing::for_each_assignment(model.num_vars(), [&](const Bits& x) {
            if (testing::polynomial_energy(model, x) < optimal_energy - 1e-9) ++below;
        });
        ranks.push_back(below + 1);
    }
    std::string detail = "ranks";
    for (std::size_t r : ranks) detail += " " + std::to_string(r);
    report("unbalanced optimum near ground state", *std::max_element(ranks.begin(), ranks.end()) <= 10, detail);
}

void encoding_comparison() {
    const auto start = Clock::now();
    int wins = 0, total = 0;
    std::string detail;
    for (std::size_t n : {10u, 11u, 12u}) {
        int size_wins = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto instance = generate_instance(n, seed);
            SamplerConfig config;
            config.seed = 1000 * n + seed;
            const AnnealingSampler annealer(config);
            const CachingSampler sampler(annealer);
            PipelineOptions options;
            options.max_iterations = 5;
            options.encoding = Encoding::Slack;
            options.lambdas = PenaltyConfig::slack_defaults();
            const double slack = eliminate_subtours(instance, options, sampler).report.valid_probability;
            options.encoding = Encoding::Unbalanced;
            options.lambdas = PenaltyConfig::unbalanced_defaults();
            const double unbalanced = eliminate_subtours(instance, options, sampler).report.valid_probability;
            ++total;
            if (unbalanced >= slack) {
                ++wins;
                ++size_wins;
            }
        }
        detail += fmt("n=%zu %d/10, ", n, size_wins);
    }
    const double elapsed = seconds_since(start);
    detail += fmt("%.0f s", elapsed);
    report("unbalanced at least as often valid", wins * 10 >= total * 8 && elapsed < 900.0,
           fmt("%d/%d instances; ", wins, total) + detail);
}

void penalty_asymmetry() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    int violations = 0;
    for (int k = 0; k < 100; ++k) {
        double l1 = 0.0;
        while (l1 <= 0.0) l1 = u(rng);
        const double l2 = u(rng);
        for (int h = 1; h <= 10; ++h) {
            if (!(unbalanced_penalty(-h, l1, l2) > unbalanced_penalty(h, l1, l2))) ++violations;
        }
    }
    report("violations penalized more than slack", violations == 0, fmt("%d of 1000 pairs out of order", violations));
}

void annealer_recovers_ground_state(const std::vector<SmallCase>& cases) {
    const auto start = Clock::now();
    int hits = 0, batches = 0;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& c = cases[k];
        for (Encoding encoding : {Encoding::Relaxation, Encoding::Unbalanced}) {
            const Bqm model = build_encoded_model(c.instance, c.constraints, encoding,
                                                  PenaltyConfig::unbalanced_defaults());
            const double ground = ground_states_exhaustive(model).lowest().energy;
            SamplerConfig config;
            config.seed = 500 + k;
            ++batches;
            if (sample_sa(model, config).lowest().energy <= ground + 1e-9) ++hits;
        }
    }
    const double elapsed = seconds_since(start);
    report("annealer finds six-city ground states", hits * 100 >= batches * 99 && elapsed < 300.0,
           fmt("%d/%d batches, %.1f s", hits, batches, elapsed));
}

void tuner_descent() {
    const auto start = Clock::now();
    int ok = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto instance = generate_instance(8, seed);
        SamplerConfig config;
        config.num_reads = 1000;
        config.seed = 90 + seed;
        const AnnealingSampler sampler(config);
        PipelineOptions discover;
        discover.mode = ConstraintMode::Cumulative;
        discover.max_iterations = 5;
        const SubtourSet fixed = eliminate_subtours(instance, discover, sampler).state.discovered;

        const PenaltyConfig initial{1.0, 1.0, 0.1};
        TunerOptions options;
        options.max_evaluations = 40;
        const auto result = tune_lambdas(instance, fixed, sampler, initial, options);
        const auto objective = make_feasible_mean_objective(instance, fixed, sampler);
        const double start_value = objective(initial);
        const double end_value = objective(result.config);
        if (end_value <= start_value) ++ok;
        detail += fmt("%.3f->%.3f ", start_value, end_value);
    }
    detail += fmt("(%.0f s)", seconds_since(start));
    report("tuner never ends above its start", ok == 5, fmt("%d/5: ", ok) + detail);
}

}  // namespace

int main() {
    relaxation_resource_table();
    slack_variable_growth();
    qubo_ising_equivalence();
    exact_pipeline_optimality();
    const auto cases = small_cases();
    slack_ground_state(cases);
    unbalanced_vicinity(cases);
    penalty_asymmetry();
    annealer_recovers_ground_state(cases);
    tuner_descent();
    encoding_comparison();
    std::printf("%d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
