// Copyright 2026 The qls-tsp Authors
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

// qls-tsp: batch experiments of path-slicing local search on TSPLIB instances.
//
// Exit status: 0 success, 2 bad configuration, 3 unreadable or malformed input
// / unwritable output.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qls/experiment.hpp"
#include "qls/slicing.hpp"
#include "qls/tsplib.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

#ifndef QLS_TSP_DATA_DIR
#define QLS_TSP_DATA_DIR "data"
#endif

// Accepts a path, or a bare instance name looked up in $QLS_TSP_DATA or the
// bundled data directory.
fs::path resolve_instance(const std::string& arg) {
    fs::path p(arg);
    if (fs::exists(p)) return p;
    if (p.has_parent_path() || p.has_extension()) return p;
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("QLS_TSP_DATA")) dirs.emplace_back(env);
    dirs.emplace_back(QLS_TSP_DATA_DIR);
    for (const auto& d : dirs) {
        const fs::path candidate = d / (arg + ".tsp");
        if (fs::exists(candidate)) return candidate;
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path-slicing quantum local search for the TSP"};
    app.require_subcommand(1);

    qls::ExperimentSettings settings;
    std::string instance_arg;
    std::string output;
    const std::map<std::string, qls::Strategy> strategies{
        {"kmeans", qls::Strategy::KMeans},
        {"anti-kmeans", qls::Strategy::AntiKMeans},
        {"random", qls::Strategy::Random},
        {"hybrid", qls::Strategy::Hybrid},
        {"hybrid-anti", qls::Strategy::HybridAnti},
    };
    const std::map<std::string, qls::SolverKind> solvers{{"sa", qls::SolverKind::Sa},
                                                         {"exact", qls::SolverKind::Exact}};
    const std::map<std::string, qls::ReportFormat> formats{{"json", qls::ReportFormat::Json},
                                                           {"csv", qls::ReportFormat::Csv}};

    CLI::App* solve = app.add_subcommand("solve", "Run repeated local-search experiments on one instance");
    solve->add_option("--instance", instance_arg, "TSPLIB .tsp file or bundled instance name")->required();
    std::string strategy_name = "hybrid";
    std::string solver_name = "sa";
    std::string format_name = "json";
    solve->add_option("--strategy", strategy_name, "Slicing strategy")
        ->check(CLI::IsMember(strategies))
        ->capture_default_str();
    solve->add_option("--clusters", settings.k, "Number of slices per iteration")->default_val(2);
    solve->add_option("--iterations", settings.iterations, "Local search iterations per run")->default_val(100);
    solve->add_option("--runs", settings.runs, "Independent runs")->default_val(100);
    solve->add_option("--seed", settings.seed, "Seed of run 0; run i uses seed + i")->default_val(0);
    solve->add_option("--solver", solver_name, "Subproblem solver")
        ->check(CLI::IsMember(solvers))
        ->capture_default_str();
    solve->add_option("--sweeps", settings.sweeps, "Annealing sweeps per read")->default_val(1000);
    solve->add_option("--reads", settings.reads, "Annealing reads per subproblem")->default_val(10);
    solve->add_option("--output", output, "Report file (stdout if omitted)");
    solve->add_option("--format", format_name, "Report format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    solve->add_flag("--trace", settings.trace, "Include per-iteration tour lengths");
    solve->add_flag("--parallel", settings.parallel, "Run experiments and slice solves concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    settings.strategy = strategies.at(strategy_name);
    settings.solver = solvers.at(solver_name);
    const qls::ReportFormat format = formats.at(format_name);
    settings.instance_path = resolve_instance(instance_arg);

    qls::ExperimentReport report;
    try {
        report = qls::run_experiment(settings);
    } catch (const qls::ParseError& e) {
        std::cerr << "error: " << settings.instance_path.string() << ": " << e.what() << "\n";
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }

    const std::string text = qls::emit_report(report, format);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!(out << text)) {
            std::cerr << "error: cannot write '" << output << "'\n";
            return kIoError;
        }
    }
    std::cerr << report.instance << " " << qls::to_string(report.strategy) << " k=" << report.k
              << ": min " << report.min << ", mean " << report.mean << ", std " << report.std
              << " over " << report.runs << " runs\n";
    return 0;
}
