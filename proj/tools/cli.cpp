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


#include "cli.hpp"

#include <chrono>
#include <iomanip>
#include <locale>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtsp/bqm.hpp"
#include "qtsp/io.hpp"
#include "qtsp/pipeline.hpp"
#include "qtsp/sampler.hpp"
#include "qtsp/tsp.hpp"
#include "qtsp/tuning.hpp"

namespace qtsp::cli {

namespace {

// Sub-seed for the annealer, so instance coordinates and annealing draws do
// not share a stream when both derive from --seed.
constexpr std::uint64_t kSamplerSeedOffset = 0x9E3779B97F4A7C15ULL;

struct Flags {
    std::optional<std::size_t> cities;
    std::string cities_spec;
    std::uint64_t seed = 1;
    std::string input;
    std::string output;
    std::string samples_path;
    std::string encoding = "unbalanced";
    std::string encodings = "relaxation,slack,unbalanced";
    std::optional<double> lambda0, lambda1, lambda2;
    std::size_t reads = 5000;
    std::size_t sweeps = 1000;
    double beta_min = 0.09;
    double beta_max = 9.6;
    std::size_t max_iterations = 10;
    std::string mode = "reset";
    std::string solver = "sa";
    std::vector<std::string> subtours;
    std::size_t instances = 1;
    std::size_t max_evaluations = 60;
};

class UsageError : public Error {
 public:
    using Error::Error;
};

class NoSolution : public Error {
 public:
    using Error::Error;
};

std::string format_number(double value) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(12) << value;
    return os.str();
}

std::string csv_number(double value) { return std::isfinite(value) ? format_number(value) : ""; }

std::vector<std::size_t> parse_city_list(const std::string& spec) {
    std::vector<std::size_t> out;
    try {
        if (auto dots = spec.find(".."); dots != std::string::npos) {
            const auto lo = std::stoul(spec.substr(0, dots));
            const auto hi = std::stoul(spec.substr(dots + 2));
            if (hi < lo) throw UsageError("empty city range '" + spec + "'");
            for (auto n = lo; n <= hi; ++n) out.push_back(n);
            return out;
        }
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(std::stoul(item));
        }
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse city list '" + spec + "'");
    }
    if (out.empty()) throw UsageError("empty city list");
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Subtour parse_subtour(const std::string& spec) {
    std::vector<std::size_t> cities;
    try {
        for (const auto& item : split(spec, ',')) cities.push_back(std::stoul(item));
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse sub-tour '" + spec + "'");
    }
    return Subtour(std::move(cities));
}

SubtourSet parse_subtours(const std::vector<std::string>& specs) {
    SubtourSet out;
    for (const auto& s : specs) out.insert(parse_subtour(s));
    return out;
}

PenaltyConfig lambdas_for(const Flags& f, Encoding encoding) {
    PenaltyConfig config =
            encoding == Encoding::Slack ? PenaltyConfig::slack_defaults() : PenaltyConfig::unbalanced_defaults();
    if (f.lambda0) config.lambda0 = *f.lambda0;
    if (f.lambda1) config.lambda1 = *f.lambda1;
    if (f.lambda2) config.lambda2 = *f.lambda2;
    config.validate();
    return config;
}

TspInstance load_instance(const Flags& f, std::uint64_t seed) {
    if (!f.input.empty()) return io::instance_from_json(io::read_json_file(f.input));
    if (!f.cities) throw UsageError("give --input or --cities");
    return generate_instance(*f.cities, seed);
}

std::unique_ptr<Sampler> make_sampler(const Flags& f, std::uint64_t seed) {
    if (f.solver == "exact") return std::make_unique<ExactSampler>();
    if (f.solver != "sa") throw UsageError("unknown solver '" + f.solver + "'");
    SamplerConfig config;
    config.num_reads = f.reads;
    config.seed = seed + kSamplerSeedOffset;
    config.schedule.num_sweeps = f.sweeps;
    config.schedule.beta_min = f.beta_min;
    config.schedule.beta_max = f.beta_max;
    return std::make_unique<AnnealingSampler>(config);
}

PipelineOptions pipeline_options(const Flags& f, Encoding encoding) {
    PipelineOptions options;
    options.encoding = encoding;
    options.lambdas = lambdas_for(f, encoding);
    options.max_iterations = f.max_iterations;
    options.mode = parse_constraint_mode(f.mode);
    return options;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        io::write_text_file(path, text);
    }
}

int cmd_generate(const Flags& f, std::ostream& out) {
    if (!f.cities) throw UsageError("generate needs --cities");
    emit(f.output, io::to_json(generate_instance(*f.cities, f.seed)).dump(2) + "\n", out);
    return kSuccess;
}

int cmd_encode(const Flags& f, std::ostream& out, std::ostream& err) {
    const TspInstance instance = load_instance(f, f.seed);
    const Encoding encoding = parse_encoding(f.encoding);
    const Bqm model = build_encoded_model(instance, parse_subtours(f.subtours), encoding, lambdas_for(f, encoding));
    const ResourceCounts counts = resource_counts(model);
    std::ostringstream line;
    line << "num_vars=" << counts.num_vars << " qubits=" << counts.qubits
         << " connections=" << counts.connections << "\n";
    const bool model_to_stdout = f.output.empty() || f.output == "-";
    emit(f.output, io::to_json(model).dump() + "\n", out);
    (model_to_stdout ? err : out) << line.str();
    return kSuccess;
}

int cmd_solve(const Flags& f, std::ostream& out) {
    const TspInstance instance = load_instance(f, f.seed);
    const Encoding encoding = parse_encoding(f.encoding);
    const auto sampler = make_sampler(f, f.seed);
    const PipelineResult result = eliminate_subtours(instance, pipeline_options(f, encoding), *sampler);

    if (!f.samples_path.empty()) {
        io::write_text_file(f.samples_path, io::to_json(result.samples.back()).dump() + "\n");
    }
    io::json report = io::to_json(result.report);
    const EdgeIndexer indexer(instance.num_cities());
    report["best_tour"] = result.best_tour ? io::to_json(*result.best_tour, indexer) : io::json(nullptr);
    io::json constraints = io::json::array();
    for (const auto& q : result.state.subtour_constraints) constraints.push_back(q.cities);
    report["subtour_constraints"] = std::move(constraints);
    emit(f.output, report.dump(2) + "\n", out);
    return result.best_tour ? kSuccess : kNoSolution;
}

int cmd_tune(const Flags& f, std::ostream& out, std::ostream& err) {
    const TspInstance instance = load_instance(f, f.seed);
    const Encoding encoding = parse_encoding(f.encoding);
    if (encoding == Encoding::Relaxation) throw UsageError("tune needs --encoding slack or unbalanced");
    const auto sampler = make_sampler(f, f.seed);

    SubtourSet fixed = parse_subtours(f.subtours);
    if (f.subtours.empty()) {
        PipelineOptions options = pipeline_options(f, encoding);
        options.mode = ConstraintMode::Cumulative;
        fixed = eliminate_subtours(instance, options, *sampler).state.discovered;
    }

    PenaltyConfig initial{1.0, 1.0, 0.1};
    if (f.lambda0) initial.lambda0 = *f.lambda0;
    if (f.lambda1) initial.lambda1 = *f.lambda1;
    if (f.lambda2) initial.lambda2 = *f.lambda2;
    TunerOptions options;
    options.max_evaluations = f.max_evaluations;
    const TuningResult tuned = tune_lambdas(instance, fixed, *sampler, initial, options, encoding);

    err << "fixed constraints: " << fixed.size() << ", evaluations: " << tuned.evaluations
        << ", objective " << format_number(tuned.initial_objective) << " -> "
        << format_number(tuned.objective) << "\n";
    emit(f.output, io::to_json(tuned.config).dump(2) + "\n", out);
    return kSuccess;
}

int cmd_bench(const Flags& f, std::ostream& out) {
    const auto cities = parse_city_list(f.cities_spec.empty() && f.cities ? std::to_string(*f.cities)
                                                                            : f.cities_spec);
    std::vector<Encoding> encodings;
    for (const auto& e : split(f.encodings, ',')) encodings.push_back(parse_encoding(e));

    std::ostringstream csv;
    csv << "n,encoding,seed,valid_probability,mean_distance,std_distance,min_distance,"
           "optimum_reference,qubits,connections,iterations_used,wall_time_ms\n";
    for (std::size_t n : cities) {
        for (std::size_t k = 0; k < f.instances; ++k) {
            const std::uint64_t seed = f.seed + k;
            const TspInstance instance = generate_instance(n, seed);
            for (Encoding encoding : encodings) {
                const auto sampler = make_sampler(f, seed);
                const auto start = std::chrono::steady_clock::now();
                const PipelineResult result =
                        eliminate_subtours(instance, pipeline_options(f, encoding), *sampler);
                const auto elapsed = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start);
                const RunReport& r = result.report;
                csv << r.n << ',' << to_string(encoding) << ',' << seed << ','
                    << format_number(r.valid_probability) << ',' << csv_number(r.mean_distance) << ','
                    << csv_number(r.std_distance) << ',' << csv_number(r.min_distance) << ','
                    << (r.optimum_reference ? format_number(*r.optimum_reference) : "") << ','
                    << r.qubits << ',' << r.connections << ',' << r.iterations_used << ','
                    << format_number(elapsed.count()) << '\n';
            }
        }
    }
    emit(f.output, csv.str(), out);
    return kSuccess;
}

int cmd_stats(const Flags& f, std::ostream& out) {
    const auto cities = parse_city_list(f.cities_spec.empty() && f.cities ? std::to_string(*f.cities)
                                                                            : f.cities_spec);
    const Encoding encoding = parse_encoding(f.encoding);
    std::ostringstream table;
    table << "encoding " << to_string(encoding) << "\n";
    table << std::left << std::setw(8) << "cities" << std::setw(10) << "qubits" << std::setw(13)
          << "connections" << "constraints\n";
    for (std::size_t n : cities) {
        const TspInstance instance = generate_instance(n, f.seed);
        SubtourSet subtours;
        if (encoding != Encoding::Relaxation) {
            // constraints found by one elimination run on this instance
            const auto sampler = make_sampler(f, f.seed);
            const PipelineResult result = eliminate_subtours(instance, pipeline_options(f, encoding), *sampler);
            subtours = result.state.subtour_constraints;
        }
        const ResourceCounts counts =
                resource_counts(build_encoded_model(instance, subtours, encoding, lambdas_for(f, encoding)));
        table << std::setw(8) << n << std::setw(10) << counts.qubits << std::setw(13) << counts.connections
              << subtours.size() << "\n";
    }
    emit(f.output, table.str(), out);
    return kSuccess;
}

void add_instance_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--cities,-n", f.cities, "Number of cities for a generated instance")
            ->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    cmd->add_option("--seed", f.seed, "Seed for the instance and every sampler");
    cmd->add_option("--input,-i", f.input, "Instance JSON file");
}

void add_lambda_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--lambda0", f.lambda0, "Degree-constraint weight");
    cmd->add_option("--lambda1", f.lambda1, "Linear inequality weight");
    cmd->add_option("--lambda2", f.lambda2, "Quadratic inequality weight (unbalanced)");
}

void add_sampler_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--solver", f.solver, "sa or exact")->check(CLI::IsMember({"sa", "exact"}));
    cmd->add_option("--reads", f.reads, "Annealing reads per iteration")->check(CLI::PositiveNumber);
    cmd->add_option("--sweeps", f.sweeps, "Sweeps per read")->check(CLI::PositiveNumber);
    cmd->add_option("--beta-min", f.beta_min, "Initial inverse temperature");
    cmd->add_option("--beta-max", f.beta_max, "Final inverse temperature");
    cmd->add_option("--max-iterations", f.max_iterations, "Elimination iterations")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", f.mode, "Constraint set update: reset or cumulative")
            ->check(CLI::IsMember({"reset", "cumulative"}));
}

void add_encoding_flag(CLI::App* cmd, Flags& f) {
    cmd->add_option("--encoding,-e", f.encoding, "relaxation, slack or unbalanced")
            ->check(CLI::IsMember({"relaxation", "slack", "unbalanced"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app{"QUBO models and sub-tour elimination for the traveling salesman problem", "qtsp"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "Write a random instance");
    generate->add_option("--cities,-n", f.cities, "Number of cities")->required()
            ->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    generate->add_option("--seed", f.seed, "Instance seed");
    generate->add_option("--output,-o", f.output, "Output path (default stdout)");

    auto* encode = app.add_subcommand("encode", "Write the QUBO model of an instance");
    add_instance_flags(encode, f);
    add_encoding_flag(encode, f);
    add_lambda_flags(encode, f);
    encode->add_option("--subtour", f.subtours, "Sub-tour city list such as 2,5,7 (repeatable)");
    encode->add_option("--output,-o", f.output, "Model path (default stdout)");

    auto* solve = app.add_subcommand("solve", "Run sub-tour elimination and report");
    add_instance_flags(solve, f);
    add_encoding_flag(solve, f);
    add_lambda_flags(solve, f);
    add_sampler_flags(solve, f);
    solve->add_option("--samples", f.samples_path, "Write the last iteration's samples here");
    solve->add_option("--output,-o", f.output, "Report path (default stdout)");

    auto* tune = app.add_subcommand("tune", "Tune penalty weights on the feasible mean energy");
    add_instance_flags(tune, f);
    add_encoding_flag(tune, f);
    add_lambda_flags(tune, f);
    add_sampler_flags(tune, f);
    tune->add_option("--subtour", f.subtours, "Fixed sub-tour constraints (default: discovered)");
    tune->add_option("--max-evals", f.max_evaluations, "Objective evaluation budget");
    tune->add_option("--output,-o", f.output, "Config path (default stdout)");

    auto* bench = app.add_subcommand("bench", "CSV sweep over sizes, encodings and seeds");
    bench->add_option("--cities,-n", f.cities_spec, "City counts: 10,11,12 or 6..15")->required();
    bench->add_option("--seed", f.seed, "First instance seed");
    bench->add_option("--instances", f.instances, "Instances per size (seeds seed, seed+1, ...)")
            ->check(CLI::PositiveNumber);
    bench->add_option("--encodings", f.encodings, "Comma-separated encodings");
    add_lambda_flags(bench, f);
    add_sampler_flags(bench, f);
    bench->add_option("--output,-o", f.output, "CSV path (default stdout)");

    auto* stats = app.add_subcommand("stats", "Qubit and connection counts per instance size");
    stats->add_option("--cities,-n", f.cities_spec, "City counts: 6..15 or 6,8,10")->required();
    stats->add_option("--seed", f.seed, "Instance seed");
    add_encoding_flag(stats, f);
    add_lambda_flags(stats, f);
    add_sampler_flags(stats, f);
    stats->add_option("--output,-o", f.output, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(f, out);
        if (encode->parsed()) return cmd_encode(f, out, err);
        if (solve->parsed()) return cmd_solve(f, out);
        if (tune->parsed()) return cmd_tune(f, out, err);
        if (bench->parsed()) return cmd_bench(f, out);
        if (stats->parsed()) return cmd_stats(f, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return kNoSolution;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }
    return kUsage;
}

}  // namespace qtsp::cli
