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
#include <string>
#include <vector>

#include "qtsp/bqm.hpp"

namespace qtsp {

struct Sample {
    Bits bits;
    double energy = 0.0;
    std::uint64_t multiplicity = 1;

    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Solver output, sorted ascending by energy (ties by bit pattern) with
/// identical assignments merged into one record.
class SampleSet {
 public:
    SampleSet() = default;
    explicit SampleSet(std::string source) : source_(std::move(source)) {}

    /// Sort the records and merge duplicates. Multiplicities of zero are dropped.
    SampleSet(std::vector<Sample> samples, std::string source);

    const std::vector<Sample>& samples() const noexcept { return samples_; }
    const std::string& source() const noexcept { return source_; }

    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    const Sample& lowest() const;

    std::uint64_t total_multiplicity() const noexcept;

    auto begin() const noexcept { return samples_.begin(); }
    auto end() const noexcept { return samples_.end(); }

    /// Associative merge; the result is independent of argument order up to
    /// the `source` label.
    friend SampleSet merge(const SampleSet& a, const SampleSet& b);

 private:
    std::vector<Sample> samples_;
    std::string source_;
};

SampleSet merge(const SampleSet& a, const SampleSet& b);

}  // namespace qtsp
