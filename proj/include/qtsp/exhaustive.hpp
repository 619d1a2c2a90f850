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

#include "qtsp/bqm.hpp"
#include "qtsp/sample_set.hpp"

namespace qtsp {

struct ExhaustiveOptions {
    /// Largest number of enumerated variables accepted.
    std::size_t max_vars = 24;

    /// Variables [0, num_primary) are enumerated. The remaining auxiliary
    /// variables are set to their exact minimizing values for each enumerated
    /// assignment, one connected auxiliary block at a time. The default
    /// enumerates every variable.
    std::size_t num_primary = std::numeric_limits<std::size_t>::max();

    /// Largest connected block of auxiliary variables minimized by enumeration.
    std::size_t max_block = 16;
};

/// The `top_k` lowest-energy assignments, exact and deterministic. With
/// auxiliary variables, one record is returned per primary assignment, carrying
/// its best auxiliary completion.
SampleSet sample_exhaustive(const Bqm& model, std::uint64_t top_k, const ExhaustiveOptions& options = {});

/// Full spectrum: every one of the 2^n assignments, sorted ascending.
SampleSet ground_states_exhaustive(const Bqm& model, std::size_t max_vars = 24);

}  // namespace qtsp
