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

#include <string>

#include <json.hpp>

#include "qtsp/bqm.hpp"
#include "qtsp/penalty.hpp"
#include "qtsp/pipeline.hpp"
#include "qtsp/sample_set.hpp"
#include "qtsp/tsp.hpp"

namespace qtsp::io {

using json = nlohmann::json;

// model: {num_vars, linear: [[i, q]], quadratic: [[i, j, q]], offset}
json to_json(const Bqm& model);
/// Rejects pairs with i >= j and out-of-range indices; zero entries are dropped.
Bqm model_from_json(const json& j);

// constraint: {terms: [[i, w]], sense: "eq" | "le", rhs}; "ge" is accepted and
// stored negated as "le"
json to_json(const LinearConstraint& constraint);
LinearConstraint constraint_from_json(const json& j);

// instance: {n, coords: [[x, y]]}
json to_json(const TspInstance& instance);
TspInstance instance_from_json(const json& j);

// sample set: [{bits: "0101...", energy, count}]
json to_json(const SampleSet& samples);
SampleSet sample_set_from_json(const json& j, std::string source = "file");

std::string bits_to_string(BitsView bits);
Bits bits_from_string(const std::string& text);

json to_json(const PenaltyConfig& config);
PenaltyConfig penalty_config_from_json(const json& j);

json to_json(const Tour& tour, const EdgeIndexer& indexer);

/// Infinite or NaN metrics serialize as null.
json to_json(const RunReport& report);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qtsp::io
