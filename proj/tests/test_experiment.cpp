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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "qls/experiment.hpp"
#include "test_support.hpp"

using namespace qls;

namespace {

ExperimentSettings small_settings() {
    ExperimentSettings s;
    s.instance_path = testing::data_path("ulysses16");
    s.k = 2;
    s.iterations = 5;
    s.runs = 4;
    s.seed = 11;
    s.sweeps = 100;
    s.reads = 2;
    return s;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("a single run has zero spread") {
    ExperimentSettings s = small_settings();
    s.runs = 1;
    const ExperimentReport r = run_experiment(s);
    REQUIRE(r.per_run.size() == 1);
    CHECK(r.std == 0.0);
    CHECK(r.min == r.mean);
    CHECK(r.min == r.per_run[0].best_length);
}

TEST_CASE("summary statistics match the per-run values") {
    ExperimentSettings s = small_settings();
    s.strategy = Strategy::Random;
    s.k = 3;
    s.runs = 6;
    const ExperimentReport r = run_experiment(s);
    REQUIRE(r.per_run.size() == 6);

    double sum = 0.0;
    double lo = r.per_run[0].best_length;
    for (std::size_t i = 0; i < r.per_run.size(); ++i) {
        const RunSummary& run = r.per_run[i];
        CHECK(run.run == i);
        CHECK(run.seed == s.seed + i);
        CHECK(run.best_length <= run.initial_length);
        CHECK(run.final_length == run.best_length);
        sum += run.best_length;
        lo = std::min(lo, run.best_length);
    }
    const double mean = sum / 6.0;
    double sq = 0.0;
    for (const auto& run : r.per_run) sq += (run.best_length - mean) * (run.best_length - mean);
    CHECK(r.min == lo);
    CHECK(r.mean == doctest::Approx(mean));
    CHECK(r.std == doctest::Approx(std::sqrt(sq / 6.0)));
    CHECK(r.dimension == 16);
    CHECK(r.full_problem_variables == 256);
    CHECK(r.subproblems.count > 0);
    CHECK(r.subproblems.min <= r.subproblems.max);
    CHECK(r.subproblems.max < 256);
}

TEST_CASE("observer sees each run in order") {
    const ExperimentSettings s = small_settings();
    std::vector<std::size_t> seen;
    const ExperimentReport r = run_experiment(s, [&](std::size_t run, const QlsTrace& t) {
        seen.push_back(run);
        CHECK(t.iterations.size() == s.iterations);
    });
    CHECK(seen == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(r.per_run.size() == 4);
}

TEST_CASE("json report survives a parse and re-emit byte for byte") {
    for (const bool trace : {false, true}) {
        ExperimentSettings s = small_settings();
        s.trace = trace;
        const ExperimentReport r = run_experiment(s);
        const std::string text = emit_report(r, ReportFormat::Json);
        const ExperimentReport back = report_from_json(text);
        CHECK(back == r);
        CHECK(emit_report(back, ReportFormat::Json) == text);
        CHECK((text.find("\"trace\": [") != std::string::npos) == trace);
        CHECK(text.back() == '\n');
    }
}

TEST_CASE("csv has one row per run plus a summary") {
    for (const bool trace : {false, true}) {
        ExperimentSettings s = small_settings();
        s.trace = trace;
        const ExperimentReport r = run_experiment(s);
        const auto rows = lines(emit_report(r, ReportFormat::Csv));
        REQUIRE(rows.size() == s.runs + 2);
        const auto columns = [](const std::string& row) { return std::count(row.begin(), row.end(), ',') + 1; };
        for (const auto& row : rows) CHECK(columns(row) == columns(rows[0]));
        CHECK(rows.back().rfind("summary,", 0) == 0);
        CHECK((rows[0].find("trace") != std::string::npos) == trace);
    }
}

TEST_CASE("parallel execution gives identical reports") {
    ExperimentSettings s = small_settings();
    s.trace = true;
    const ExperimentReport seq = run_experiment(s);
    s.parallel = true;
    const ExperimentReport par = run_experiment(s);
    CHECK(emit_report(seq, ReportFormat::Json) == emit_report(par, ReportFormat::Json));
    CHECK(run_experiment(s) == par);
}

TEST_CASE("bad experiment settings") {
    ExperimentSettings s = small_settings();
    s.runs = 0;
    CHECK_THROWS_AS(run_experiment(s), ConfigError);
    s = small_settings();
    s.k = 9;
    CHECK_THROWS_AS(run_experiment(s), ConfigError);
    s = small_settings();
    s.instance_path = testing::data_path("no_such_instance");
    CHECK_THROWS(run_experiment(s));
    CHECK_FALSE(report_format_from("xml").has_value());
    CHECK(report_format_from("csv") == ReportFormat::Csv);
}
