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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qls/qls.hpp"
#include "qls/slicing.hpp"
#include "qls/tsplib.hpp"

namespace qls {

struct ExperimentSettings {
    std::filesystem::path instance_path;
    Strategy strategy = Strategy::Hybrid;
    std::size_t k = 2;
    std::size_t iterations = 100;
    std::size_t runs = 100;
    std::uint64_t seed = 0;
    SolverKind solver = SolverKind::Sa;
    std::size_t sweeps = 1000;
    std::size_t reads = 10;
    bool trace = false;
    /// Runs (and slices within a run) execute concurrently. Results do not
    /// depend on it.
    bool parallel = false;
};

struct RunSummary {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double initial_length = 0.0;
    double best_length = 0.0;
    double final_length = 0.0;
    std::vector<double> trace;  // length after each iteration, when requested

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// QUBO variable counts over every slice that had at least one interior city.
struct SubproblemStats {
    std::size_t count = 0;
    double mean = 0.0;
    std::size_t min = 0;
    std::size_t max = 0;

    friend bool operator==(const SubproblemStats&, const SubproblemStats&) = default;
};

struct ExperimentReport {
    std::string instance;
    std::size_t dimension = 0;
    std::size_t full_problem_variables = 0;  // n^2
    Strategy strategy = Strategy::Hybrid;
    std::size_t k = 0;
    std::size_t iterations = 0;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    SolverKind solver = SolverKind::Sa;
    std::size_t sweeps = 0;
    std::size_t reads = 0;
    bool has_trace = false;

    std::vector<RunSummary> per_run;
    double min = 0.0;
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
    SubproblemStats subproblems;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Called once per finished run, in run order.
using RunObserver = std::function<void(std::size_t run, const QlsTrace& trace)>;

/// `runs` independent run_qls calls with seeds seed+0 .. seed+runs-1.
ExperimentReport run_experiment(const Instance& instance, const ExperimentSettings& settings,
                                const RunObserver& observer = {});

/// Loads settings.instance_path first.
ExperimentReport run_experiment(const ExperimentSettings& settings, const RunObserver& observer = {});

enum class ReportFormat { Json, Csv };

std::optional<ReportFormat> report_format_from(std::string_view name);

std::string emit_report(const ExperimentReport& report, ReportFormat format);

/// Inverse of emit_report(..., Json).
ExperimentReport report_from_json(std::string_view text);

}  // namespace qls
