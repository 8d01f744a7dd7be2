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

#include "qls/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace qls {

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
    RunSummary summary;
    std::vector<std::size_t> var_counts;
    std::optional<QlsTrace> trace;
};

RunResult execute_run(const Instance& instance, const DistanceMatrix& matrix, const QlsConfig& base,
                      std::size_t run, bool want_trace, bool keep_full_trace) {
    QlsConfig config = base;
    config.seed = base.seed + run;
    QlsTrace trace = run_qls(instance, matrix, config);

    RunResult r;
    r.summary.run = run;
    r.summary.seed = config.seed;
    r.summary.initial_length = trace.initial.length();
    r.summary.final_length = trace.final_tour.length();
    double best = trace.initial.length();
    for (const auto& rec : trace.iterations) {
        best = std::min(best, rec.length);
        if (want_trace) r.summary.trace.push_back(rec.length);
        for (const auto& s : rec.slices) {
            if (s.solved) r.var_counts.push_back(s.num_vars);
        }
    }
    r.summary.best_length = best;
    if (keep_full_trace) r.trace = std::move(trace);
    return r;
}

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSettings& settings, const RunObserver& observer) {
    return run_experiment(load_instance(settings.instance_path), settings, observer);
}

ExperimentReport run_experiment(const Instance& instance, const ExperimentSettings& settings,
                                const RunObserver& observer) {
    if (settings.runs < 1) throw ConfigError("runs must be at least 1");

    QlsConfig base;
    base.strategy = settings.strategy;
    base.k = settings.k;
    base.iterations = settings.iterations;
    base.solver = settings.solver;
    base.sa_params.sweeps = settings.sweeps;
    base.sa_params.reads = settings.reads;
    base.seed = settings.seed;
    base.parallel_slices = settings.parallel;
    check_config(base, instance.dimension);

    const DistanceMatrix matrix = build_distance_matrix(instance);
    const bool keep = static_cast<bool>(observer);
    std::vector<RunResult> results(settings.runs);

    if (settings.parallel && settings.runs > 1) {
        const std::size_t workers =
            std::min<std::size_t>(settings.runs, std::max(1u, std::thread::hardware_concurrency()));
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < settings.runs; i = next++) {
                    try {
                        results[i] = execute_run(instance, matrix, base, i, settings.trace, keep);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::size_t i = 0; i < settings.runs; ++i) {
            results[i] = execute_run(instance, matrix, base, i, settings.trace, keep);
        }
    }

    ExperimentReport report;
    report.instance = instance.name;
    report.dimension = instance.dimension;
    report.full_problem_variables = instance.dimension * instance.dimension;
    report.strategy = settings.strategy;
    report.k = settings.k;
    report.iterations = settings.iterations;
    report.runs = settings.runs;
    report.seed = settings.seed;
    report.solver = settings.solver;
    report.sweeps = settings.sweeps;
    report.reads = settings.reads;
    report.has_trace = settings.trace;

    double sum = 0.0;
    report.min = std::numeric_limits<double>::infinity();
    std::size_t var_sum = 0;
    report.subproblems.min = std::numeric_limits<std::size_t>::max();
    for (auto& r : results) {
        if (observer) observer(r.summary.run, *r.trace);
        report.min = std::min(report.min, r.summary.best_length);
        sum += r.summary.best_length;
        for (const std::size_t v : r.var_counts) {
            ++report.subproblems.count;
            var_sum += v;
            report.subproblems.min = std::min(report.subproblems.min, v);
            report.subproblems.max = std::max(report.subproblems.max, v);
        }
        report.per_run.push_back(std::move(r.summary));
    }
    const auto runs = static_cast<double>(settings.runs);
    report.mean = sum / runs;
    double sq = 0.0;
    for (const auto& r : report.per_run) sq += (r.best_length - report.mean) * (r.best_length - report.mean);
    report.std = std::sqrt(sq / runs);
    if (report.subproblems.count > 0) {
        report.subproblems.mean = static_cast<double>(var_sum) / static_cast<double>(report.subproblems.count);
    } else {
        report.subproblems.min = 0;
    }
    return report;
}

std::optional<ReportFormat> report_format_from(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    return std::nullopt;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json j;
        j["instance"] = report.instance;
        j["dimension"] = report.dimension;
        j["full_problem_variables"] = report.full_problem_variables;
        j["config"] = Json{
            {"strategy", std::string(to_string(report.strategy))},
            {"clusters", report.k},
            {"iterations", report.iterations},
            {"runs", report.runs},
            {"seed", report.seed},
            {"solver", std::string(to_string(report.solver))},
            {"sweeps", report.sweeps},
            {"reads", report.reads},
            {"trace", report.has_trace},
        };
        j["summary"] = Json{{"min", report.min}, {"mean", report.mean}, {"std", report.std}};
        j["subproblems"] = Json{
            {"count", report.subproblems.count},
            {"mean", report.subproblems.mean},
            {"min", report.subproblems.min},
            {"max", report.subproblems.max},
        };
        Json runs = Json::array();
        for (const auto& r : report.per_run) {
            Json row{
                {"run", r.run},
                {"seed", r.seed},
                {"initial_length", r.initial_length},
                {"best_length", r.best_length},
                {"final_length", r.final_length},
            };
            if (report.has_trace) row["trace"] = r.trace;
            runs.push_back(std::move(row));
        }
        j["runs"] = std::move(runs);
        return j.dump(2) + "\n";
    }

    std::string out = "run,seed,initial_length,best_length,final_length,min,mean,std,"
                      "subproblem_mean,subproblem_min,subproblem_max";
    if (report.has_trace) out += ",trace";
    out += "\n";
    for (const auto& r : report.per_run) {
        out += std::to_string(r.run) + "," + std::to_string(r.seed) + "," + fmt(r.initial_length) + "," +
               fmt(r.best_length) + "," + fmt(r.final_length) + ",,,,,,";
        if (report.has_trace) {
            out += ",";
            for (std::size_t i = 0; i < r.trace.size(); ++i) {
                if (i > 0) out += ";";
                out += fmt(r.trace[i]);
            }
        }
        out += "\n";
    }
    out += "summary,,,,," + fmt(report.min) + "," + fmt(report.mean) + "," + fmt(report.std) + "," +
           fmt(report.subproblems.mean) + "," + std::to_string(report.subproblems.min) + "," +
           std::to_string(report.subproblems.max);
    if (report.has_trace) out += ",";
    out += "\n";
    return out;
}

ExperimentReport report_from_json(std::string_view text) {
    const Json j = Json::parse(text);
    ExperimentReport r;
    r.instance = j.at("instance").get<std::string>();
    r.dimension = j.at("dimension").get<std::size_t>();
    r.full_problem_variables = j.at("full_problem_variables").get<std::size_t>();

    const Json& c = j.at("config");
    const auto strategy = strategy_from(c.at("strategy").get<std::string>());
    const auto solver = solver_kind_from(c.at("solver").get<std::string>());
    if (!strategy || !solver) throw std::invalid_argument("report has an unknown strategy or solver");
    r.strategy = *strategy;
    r.solver = *solver;
    r.k = c.at("clusters").get<std::size_t>();
    r.iterations = c.at("iterations").get<std::size_t>();
    r.runs = c.at("runs").get<std::size_t>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.sweeps = c.at("sweeps").get<std::size_t>();
    r.reads = c.at("reads").get<std::size_t>();
    r.has_trace = c.at("trace").get<bool>();

    const Json& s = j.at("summary");
    r.min = s.at("min").get<double>();
    r.mean = s.at("mean").get<double>();
    r.std = s.at("std").get<double>();

    const Json& sp = j.at("subproblems");
    r.subproblems.count = sp.at("count").get<std::size_t>();
    r.subproblems.mean = sp.at("mean").get<double>();
    r.subproblems.min = sp.at("min").get<std::size_t>();
    r.subproblems.max = sp.at("max").get<std::size_t>();

    for (const Json& row : j.at("runs")) {
        RunSummary rs;
        rs.run = row.at("run").get<std::size_t>();
        rs.seed = row.at("seed").get<std::uint64_t>();
        rs.initial_length = row.at("initial_length").get<double>();
        rs.best_length = row.at("best_length").get<double>();
        rs.final_length = row.at("final_length").get<double>();
        if (r.has_trace) rs.trace = row.at("trace").get<std::vector<double>>();
        r.per_run.push_back(std::move(rs));
    }
    return r;
}

}  // namespace qls
