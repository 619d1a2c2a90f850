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
#include <memory>
#include <string>

#include "qtsp/anneal.hpp"
#include "qtsp/bqm.hpp"
#include "qtsp/exhaustive.hpp"
#include "qtsp/sample_set.hpp"

namespace qtsp {

/// Context a caller passes along with a model.
struct SampleRequest {
    /// Leading variables that carry the problem; the rest are auxiliary
    /// (slack bits). Samplers may use this, the annealer ignores it.
    std::size_t num_primary = std::numeric_limits<std::size_t>::max();
    /// Distinguishes repeated calls so stochastic samplers draw fresh streams.
    std::uint64_t stream = 0;
};

class Sampler {
 public:
    virtual ~Sampler() = default;

    virtual SampleSet sample(const Bqm& model, const SampleRequest& request) const = 0;

    virtual std::string name() const = 0;
};

class AnnealingSampler : public Sampler {
 public:
    explicit AnnealingSampler(SamplerConfig config) : config_(config) { config_.validate(); }

    SampleSet sample(const Bqm& model, const SampleRequest& request) const override {
        return sample_sa(model, config_, request.stream);
    }

    std::string name() const override { return "sa"; }

    const SamplerConfig& config() const noexcept { return config_; }

 private:
    SamplerConfig config_;
};

/// Exact enumeration standing in for hardware at desk scale. Enumerates the
/// primary variables and minimizes auxiliary ones exactly.
class ExactSampler : public Sampler {
 public:
    /// top_k defaults to every primary assignment.
    explicit ExactSampler(std::uint64_t top_k = std::numeric_limits<std::uint64_t>::max(),
                          std::size_t max_vars = 24)
            : top_k_(top_k), max_vars_(max_vars) {}

    SampleSet sample(const Bqm& model, const SampleRequest& request) const override {
        ExhaustiveOptions options;
        options.max_vars = max_vars_;
        options.num_primary = request.num_primary;
        return sample_exhaustive(model, top_k_, options);
    }

    std::string name() const override { return "exact"; }

 private:
    std::uint64_t top_k_;
    std::size_t max_vars_;
};

}  // namespace qtsp
