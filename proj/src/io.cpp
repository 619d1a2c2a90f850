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


#include "qtsp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qtsp::io {

namespace {

json number_or_null(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

template <class T>
T require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ContractError(std::string("missing field '") + key + "'");
    }
    return j.at(key).get<T>();
}

}  // namespace

json to_json(const Bqm& model) {
    json linear = json::array();
    for (const auto& [i, q] : model.linear_terms()) linear.push_back({i, q});
    json quadratic = json::array();
    for (const auto& [key, q] : model.quadratic_terms()) quadratic.push_back({key.first, key.second, q});
    return {{"num_vars", model.num_vars()},
            {"linear", std::move(linear)},
            {"quadratic", std::move(quadratic)},
            {"offset", model.offset()}};
}

Bqm model_from_json(const json& j) {
    try {
        Bqm model(require<std::size_t>(j, "num_vars"), j.value("offset", 0.0));
        for (const auto& entry : j.value("linear", json::array())) {
            model.add_linear(entry.at(0).get<std::size_t>(), entry.at(1).get<double>());
        }
        for (const auto& entry : j.value("quadratic", json::array())) {
            const auto a = entry.at(0).get<std::size_t>();
            const auto b = entry.at(1).get<std::size_t>();
            if (a >= b) {
                throw ContractError("quadratic entry (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") must have i < j");
            }
            model.add_quadratic(a, b, entry.at(2).get<double>());
        }
        return model;
    } catch (const json::exception& e) {
        throw ContractError(std::string("malformed model: ") + e.what());
    }
}

json to_json(const LinearConstraint& constraint) {
    json terms = json::array();
    for (const auto& [i, w] : constraint.terms) terms.push_back({i, w});
    return {{"terms", std::move(terms)},
            {"sense", constraint.sense == Sense::Equal ? "eq" : "le"},
            {"rhs", constraint.rhs}};
}

LinearConstraint constraint_from_json(const json& j) {
    try {
        std::map<std::size_t, std::int64_t> terms;
        for (const auto& entry : require<json>(j, "terms")) {
            terms[entry.at(0).get<std::size_t>()] += entry.at(1).get<std::int64_t>();
        }
        std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
        const auto sense = require<std::string>(j, "sense");
        const auto rhs = require<std::int64_t>(j, "rhs");
        LinearConstraint c;
        if (sense == "ge") {
            c = LinearConstraint::greater_equal(std::move(terms), rhs);
        } else if (sense == "eq" || sense == "le") {
            c.terms = std::move(terms);
            c.sense = sense == "eq" ? Sense::Equal : Sense::LessEqual;
            c.rhs = rhs;
        } else {
            throw ContractError("unknown constraint sense '" + sense + "'");
        }
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ContractError(std::string("malformed constraint: ") + e.what());
    }
}

json to_json(const TspInstance& instance) {
    json coords = json::array();
    for (Eigen::Index i = 0; i < instance.coords().rows(); ++i) {
        coords.push_back({instance.coords()(i, 0), instance.coords()(i, 1)});
    }
    return {{"n", instance.num_cities()}, {"coords", std::move(coords)}};
}

TspInstance instance_from_json(const json& j) {
    try {
        const auto& coords = require<json>(j, "coords");
        const auto n = j.value("n", coords.size());
        if (n != coords.size()) throw ContractError("instance 'n' does not match coordinate count");
        Coordinates xy(static_cast<Eigen::Index>(n), 2);
        for (std::size_t i = 0; i < n; ++i) {
            xy(static_cast<Eigen::Index>(i), 0) = coords.at(i).at(0).get<double>();
            xy(static_cast<Eigen::Index>(i), 1) = coords.at(i).at(1).get<double>();
        }
        return TspInstance(std::move(xy));
    } catch (const json::exception& e) {
        throw ContractError(std::string("malformed instance: ") + e.what());
    }
}

std::string bits_to_string(BitsView bits) {
    std::string out(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? '1' : '0';
    return out;
}

Bits bits_from_string(const std::string& text) {
    Bits bits(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') throw ContractError("bit string may hold only 0 and 1");
        bits[i] = text[i] == '1' ? 1 : 0;
    }
    return bits;
}

json to_json(const SampleSet& samples) {
    json out = json::array();
    for (const Sample& s : samples) {
        out.push_back({{"bits", bits_to_string(s.bits)}, {"energy", s.energy}, {"count", s.multiplicity}});
    }
    return out;
}

SampleSet sample_set_from_json(const json& j, std::string source) {
    try {
        std::vector<Sample> samples;
        for (const auto& entry : j) {
            samples.push_back({bits_from_string(require<std::string>(entry, "bits")),
                               require<double>(entry, "energy"), entry.value("count", std::uint64_t{1})});
        }
        return SampleSet(std::move(samples), std::move(source));
    } catch (const json::exception& e) {
        throw ContractError(std::string("malformed sample set: ") + e.what());
    }
}

json to_json(const PenaltyConfig& config) {
    return {{"lambda0", config.lambda0}, {"lambda1", config.lambda1}, {"lambda2", config.lambda2}};
}

PenaltyConfig penalty_config_from_json(const json& j) {
    PenaltyConfig config{require<double>(j, "lambda0"), require<double>(j, "lambda1"),
                         j.value("lambda2", 0.0)};
    config.validate();
    return config;
}

json to_json(const Tour& tour, const EdgeIndexer& indexer) {
    return {{"cities", tour.cities},
            {"distance", tour.distance},
            {"edges", bits_to_string(tour_to_bits(tour.cities, indexer))}};
}

json to_json(const RunReport& report) {
    json out = {{"encoding", std::string(to_string(report.encoding))},
                {"n", report.n},
                {"valid_probability", report.valid_probability},
                {"mean_distance", number_or_null(report.mean_distance)},
                {"std_distance", number_or_null(report.std_distance)},
                {"min_distance", number_or_null(report.min_distance)},
                {"qubits", report.qubits},
                {"connections", report.connections},
                {"num_vars", report.num_vars},
                {"iterations_used", report.iterations_used}};
    out["optimum_reference"] = report.optimum_reference ? json(*report.optimum_reference) : json(nullptr);
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(path, std::string("invalid JSON: ") + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

}  // namespace qtsp::io
