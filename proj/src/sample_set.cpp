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


#include "qtsp/sample_set.hpp"

#include <algorithm>
#include <numeric>

namespace qtsp {

namespace {

bool sample_less(const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.bits < b.bits;
}

std::vector<Sample> normalize(std::vector<Sample> samples) {
    std::erase_if(samples, [](const Sample& s) { return s.multiplicity == 0; });
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
        if (a.bits != b.bits) return a.bits < b.bits;
        return a.energy < b.energy;
    });
    std::vector<Sample> merged;
    merged.reserve(samples.size());
    for (auto& s : samples) {
        if (!merged.empty() && merged.back().bits == s.bits) {
            merged.back().multiplicity += s.multiplicity;
        } else {
            merged.push_back(std::move(s));
        }
    }
    std::sort(merged.begin(), merged.end(), sample_less);
    return merged;
}

}  // namespace

SampleSet::SampleSet(std::vector<Sample> samples, std::string source)
        : samples_(normalize(std::move(samples))), source_(std::move(source)) {}

const Sample& SampleSet::lowest() const {
    if (samples_.empty()) throw ContractError("sample set is empty");
    return samples_.front();
}

std::uint64_t SampleSet::total_multiplicity() const noexcept {
    return std::accumulate(samples_.begin(), samples_.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const Sample& s) { return acc + s.multiplicity; });
}

SampleSet merge(const SampleSet& a, const SampleSet& b) {
    std::vector<Sample> all = a.samples_;
    all.insert(all.end(), b.samples_.begin(), b.samples_.end());
    return SampleSet(std::move(all), a.source_.empty() ? b.source_ : a.source_);
}

}  // namespace qtsp
