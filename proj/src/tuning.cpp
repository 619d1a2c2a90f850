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


#include "qtsp/tuning.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <limits>
#include <memory>

namespace qtsp {

namespace {

struct GslVectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

PenaltyConfig project(const gsl_vector* v) {
    return {std::max(0.0, gsl_vector_get(v, 0)), std::max(0.0, gsl_vector_get(v, 1)),
            std::max(0.0, gsl_vector_get(v, 2))};
}

struct Tracker {
    const PenaltyObjective* objective;
    std::size_t evaluations = 0;
    PenaltyConfig best;
    double best_value = std::numeric_limits<double>::infinity();

    double operator()(const PenaltyConfig& config) {
        ++evaluations;
        const double value = (*objective)(config);
        if (value < best_value) {
            best_value = value;
            best = config;
        }
        return value;
    }
};

// Points outside the nonnegative orthant are scored at their projection plus
// the clipped distance, so the simplex sees a slope back toward the boundary
// instead of a plateau.
double gsl_objective(const gsl_vector* v, void* params) {
    auto* tracker = static_cast<Tracker*>(params);
    double outside = 0.0;
    for (std::size_t i = 0; i < 3; ++i) outside += std::max(0.0, -gsl_vector_get(v, i));
    return (*tracker)(project(v)) + outside * (1.0 + outside);
}

}  // namespace

TuningResult minimize_penalty_objective(const PenaltyObjective& objective, const PenaltyConfig& initial,
                                        const TunerOptions& options) {
    initial.validate();
    gsl_set_error_handler_off();
    Tracker tracker{&objective, 0, initial, std::numeric_limits<double>::infinity()};
    TuningResult result;
    result.initial = initial;
    result.initial_objective = tracker(initial);

    if (options.max_evaluations > 1) {
        std::unique_ptr<gsl_vector, GslVectorDeleter> x(gsl_vector_alloc(3));
        std::unique_ptr<gsl_vector, GslVectorDeleter> step(gsl_vector_alloc(3));
        gsl_vector_set(x.get(), 0, initial.lambda0);
        gsl_vector_set(x.get(), 1, initial.lambda1);
        gsl_vector_set(x.get(), 2, initial.lambda2);
        gsl_vector_set_all(step.get(), options.initial_step);

        gsl_multimin_function fn{&gsl_objective, 3, &tracker};
        std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter> minimizer(
                gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3));
        gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get());

        while (tracker.evaluations < options.max_evaluations) {
            if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
            const double size = gsl_multimin_fminimizer_size(minimizer.get());
            if (gsl_multimin_test_size(size, options.tolerance) == GSL_SUCCESS) break;
        }
    }

    result.config = tracker.best;
    result.objective = tracker.best_value;
    result.evaluations = tracker.evaluations;
    return result;
}

double feasible_mean_energy(const SampleSet& samples, const std::function<bool(BitsView)>& feasible) {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    std::uint64_t count = 0;
    double max_energy = -std::numeric_limits<double>::infinity();
    for (const Sample& s : samples) {
        max_energy = std::max(max_energy, s.energy);
        if (!feasible(s.bits)) continue;
        sum += s.energy * static_cast<double>(s.multiplicity);
        count += s.multiplicity;
    }
    if (count == 0) return max_energy + 1.0;
    return sum / static_cast<double>(count);
}

bool satisfies_constraints(BitsView bits, const TspInstance& instance, const EdgeIndexer& indexer,
                           const SubtourSet& subtours) {
    const BitsView edges = bits.first(indexer.num_edges());
    if (!analyze(edges, instance, indexer).degree_feasible) return false;
    return std::all_of(subtours.begin(), subtours.end(), [&](const Subtour& q) {
        return subtour_constraint(q, indexer).satisfied(edges);
    });
}

PenaltyObjective make_feasible_mean_objective(const TspInstance& instance, const SubtourSet& fixed,
                                              const Sampler& sampler, Encoding encoding) {
    return [&instance, fixed, &sampler, encoding](const PenaltyConfig& lambdas) {
        const EdgeIndexer indexer(instance.num_cities());
        const Bqm model = build_encoded_model(instance, fixed, encoding, lambdas);
        const SampleSet samples = sampler.sample(model, SampleRequest{indexer.num_edges(), 0});
        return feasible_mean_energy(samples, [&](BitsView bits) {
            return satisfies_constraints(bits, instance, indexer, fixed);
        });
    };
}

TuningResult tune_lambdas(const TspInstance& instance, const SubtourSet& fixed, const Sampler& sampler,
                          const PenaltyConfig& initial, const TunerOptions& options, Encoding encoding) {
    return minimize_penalty_objective(make_feasible_mean_objective(instance, fixed, sampler, encoding),
                                      initial, options);
}

}  // namespace qtsp
