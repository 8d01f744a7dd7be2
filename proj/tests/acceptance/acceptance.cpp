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

// Acceptance checks for the library and the qls-tsp CLI. Prints one
// PASS/FAIL line per criterion and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qls/experiment.hpp"
#include "qls/init.hpp"
#include "qls/qls.hpp"
#include "qls/qubo.hpp"
#include "qls/slicing.hpp"
#include "qls/solvers.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace qls;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

// Everything the variable-count criterion needs from a batch of runs.
struct Observed {
    ExperimentReport report;
    std::size_t bad_var_counts = 0;  // solved slices whose model is not (m-2)^2
    std::size_t kmeans_max = 0;      // over slices planned by k-means
    std::size_t overall_max = 0;
    double seconds = 0.0;
};

struct ExperimentKey {
    std::string instance;
    Strategy strategy;
    std::size_t k;
    auto operator<=>(const ExperimentKey&) const = default;
};

class Experiments {
 public:
    const Observed& get(const ExperimentKey& key) {
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        ExperimentSettings s;
        s.instance_path = testing::data_path(key.instance);
        s.strategy = key.strategy;
        s.k = key.k;
        s.iterations = 100;
        s.runs = 100;
        s.seed = 0;
        s.solver = SolverKind::Sa;

        Observed o;
        const auto t0 = std::chrono::steady_clock::now();
        o.report = run_experiment(s, [&](std::size_t, const QlsTrace& trace) {
            for (const auto& rec : trace.iterations) {
                for (const auto& sl : rec.slices) {
                    if (!sl.solved) continue;
                    if (sl.num_vars != (sl.cities - 2) * (sl.cities - 2)) ++o.bad_var_counts;
                    o.overall_max = std::max(o.overall_max, sl.num_vars);
                    if (rec.method == Strategy::KMeans) o.kmeans_max = std::max(o.kmeans_max, sl.num_vars);
                }
            }
        });
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "  [" << key.instance << " " << to_string(key.strategy) << " k=" << key.k << ": min "
                  << o.report.min << ", mean " << o.report.mean << ", " << o.seconds << " s]\n";
        return cache_.emplace(key, std::move(o)).first->second;
    }

 private:
    std::map<ExperimentKey, Observed> cache_;
};

std::string num(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

Segment random_slice(Rng& rng, std::size_t interior, DistanceMatrix& matrix_out) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(interior) + 3, 30));
    matrix_out = build_distance_matrix(testing::random_instance(n, rng));
    const Tour tour(testing::random_order(n, rng), matrix_out);
    const auto start = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    return segment_at(tour, start, interior + 2);
}

Verdict optimum_ulysses16(Experiments& ex) {
    const Observed& o = ex.get({"ulysses16", Strategy::Hybrid, 2});
    return {o.report.min == 6859.0, "ulysses16 hybrid k=2, 100 runs: min " + num(o.report.min) + ", need 6859"};
}

Verdict near_optimum_djibouti38(Experiments& ex) {
    bool pass = true;
    std::string detail = "djibouti38 random, 100 runs, need min <= 6722.56 and < 7396:";
    for (const std::size_t k : {3, 4, 5}) {
        const double m = ex.get({"djibouti38", Strategy::Random, k}).report.min;
        pass = pass && m <= 6656.0 * 1.01 && m < 7396.0;
        detail += " k=" + std::to_string(k) + " min " + num(m);
    }
    return {pass, detail};
}

Verdict near_optimum_att48(Experiments& ex) {
    const double m = ex.get({"att48", Strategy::Hybrid, 6}).report.min;
    return {m <= 10628.0 * 1.02, "att48 hybrid k=6, 100 runs: min " + num(m) + ", need <= 10840.56"};
}

Verdict variable_reduction(Experiments& ex) {
    struct Row {
        ExperimentKey key;
        std::size_t n;
        std::size_t table_max;
    };
    // k-means iterations of the hybrid strategy supply the clustered slices.
    const Row rows[] = {{{"ulysses16", Strategy::Hybrid, 2}, 16, 64},
                        {{"djibouti38", Strategy::Hybrid, 5}, 38, 196},
                        {{"att48", Strategy::Hybrid, 6}, 48, 144}};
    bool pass = true;
    std::string detail;
    for (const Row& r : rows) {
        const Observed& o = ex.get(r.key);
        const bool full_ok = o.report.full_problem_variables == r.n * r.n;
        const bool within = 2 * o.kmeans_max >= r.table_max && o.kmeans_max <= 2 * r.table_max;
        pass = pass && full_ok && o.bad_var_counts == 0 && within;
        detail += r.key.instance + ": full " + std::to_string(o.report.full_problem_variables) + ", k-means max " +
                  std::to_string(o.kmeans_max) + " vs " + std::to_string(r.table_max) + " (all slices max " +
                  std::to_string(o.overall_max) + ", " + std::to_string(o.bad_var_counts) + " size mismatches); ";
    }
    return {pass, detail};
}

Verdict qubo_oracle() {
    Rng rng(5005);
    int agree = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        DistanceMatrix m;
        const auto interior = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const Segment slice = random_slice(rng, interior, m);
        const SliceQubo model = build_slice_qubo(slice, m);
        const SolverResult exact = solve_exact(model.qubo);
        const Decoded decoded = decode_solution(exact.bits, model);
        const PathOracleResult oracle = permutation_oracle(slice, m);
        const double gap = std::abs(exact.energy - oracle.length);
        worst = std::max(worst, gap);
        if (decoded.ok() && decoded.interior == oracle.interior && gap <= 1e-9) ++agree;
    }
    return {agree == 500, std::to_string(agree) + "/500 slices agree, worst energy gap " + num(worst)};
}

Verdict sa_quality() {
    Rng rng(6006);
    int match = 0;
    int per_size[6] = {};
    int count[6] = {};
    for (int trial = 0; trial < 100; ++trial) {
        DistanceMatrix m;
        const auto interior = static_cast<std::size_t>(uniform_int(rng, 3, 5));
        const Segment slice = random_slice(rng, interior, m);
        const SliceQubo model = build_slice_qubo(slice, m);
        const double e_exact = solve_exact(model.qubo).energy;
        const double e_sa = solve_sa(model.qubo, SaParams{}).energy;
        ++count[interior];
        if (std::abs(e_sa - e_exact) <= 1e-9 * std::max(1.0, std::abs(e_exact))) {
            ++match;
            ++per_size[interior];
        }
    }
    std::string detail = std::to_string(match) + "/100 slices match exact, need >= 95 (";
    for (int q = 3; q <= 5; ++q) {
        detail += "interior " + std::to_string(q) + ": " + std::to_string(per_size[q]) + "/" +
                  std::to_string(count[q]) + (q < 5 ? ", " : ")");
    }
    return {match >= 95, detail};
}

Verdict monotone_improvement() {
    Rng rng(7007);
    const Strategy strategies[] = {Strategy::KMeans, Strategy::AntiKMeans, Strategy::Random, Strategy::Hybrid,
                                   Strategy::HybridAnti};
    constexpr std::size_t kIterations = 10;
    int good = 0;
    std::string first_failure;
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 5, 40));
        const Instance inst = testing::random_instance(n, rng);
        const DistanceMatrix m = build_distance_matrix(inst);
        QlsConfig c;
        c.strategy = strategies[uniform_int(rng, 0, 4)];
        c.k = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(std::min<std::size_t>(n / 2, 8))));
        c.seed = rng();
        c.iterations = kIterations;
        const QlsTrace full = run_qls(inst, m, c);

        bool ok = !validate_tour(full.initial, n, m).has_value();
        double previous = full.initial.length();
        for (std::size_t t = 0; t < kIterations && ok; ++t) {
            ok = full.iterations[t].length <= previous;
            previous = full.iterations[t].length;
            // A run cut short after t+1 iterations ends at the intermediate tour.
            QlsConfig prefix = c;
            prefix.iterations = t + 1;
            const Tour mid = run_qls(inst, m, prefix).final_tour;
            ok = ok && !validate_tour(mid, n, m).has_value() &&
                 std::abs(mid.length() - full.iterations[t].length) <= 1e-9 * std::max(1.0, mid.length());
        }
        if (ok) {
            ++good;
        } else if (first_failure.empty()) {
            first_failure = ", first failure trial " + std::to_string(trial);
        }
    }
    return {good == 50, std::to_string(good) + "/50 fuzzed runs monotone with valid tours" + first_failure};
}

bool embedding_ok(const CircleEmbedding& e) {
    double total = 0.0;
    for (const double s : e.steps) total += s;
    if (std::abs(total - 2.0 * std::numbers::pi) > 1e-9) return false;
    return std::all_of(e.points.begin(), e.points.end(),
                       [](Point p) { return std::abs(std::hypot(p.x, p.y) - 1.0) <= 1e-9; });
}

Verdict circle_embedding() {
    int checked = 0;
    int good = 0;
    for (const char* name : {"ulysses16", "att48", "djibouti38"}) {
        const Instance inst = load_instance(testing::data_path(name));
        const DistanceMatrix m = build_distance_matrix(inst);
        ++checked;
        good += embedding_ok(embed_on_circle(initial_tour(inst, m), m));
    }
    Rng rng(8008);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 3, 60));
        const DistanceMatrix m = build_distance_matrix(testing::random_instance(n, rng));
        ++checked;
        good += embedding_ok(embed_on_circle(Tour(testing::random_order(n, rng), m), m));
    }
    // With every edge the same length, any tour must land on a regular polygon.
    int regular = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 3, 40));
        DistanceMatrix m(n);
        const double w = static_cast<double>(uniform_int(rng, 1, 1000));
        for (City a = 0; a < n; ++a)
            for (City b = a + 1; b < n; ++b) m.set(a, b, w);
        const CircleEmbedding e = embed_on_circle(Tour(testing::random_order(n, rng), m), m);
        const double gap = 2.0 * std::numbers::pi / static_cast<double>(n);
        bool ok = embedding_ok(e);
        for (std::size_t p = 0; p < n && ok; ++p) {
            const Point a = e.points[p];
            const Point b = e.points[(p + 1) % n];
            const double between = std::remainder(std::atan2(b.y, b.x) - std::atan2(a.y, a.x), 2.0 * std::numbers::pi);
            ok = std::abs(between - gap) <= 1e-9 && std::abs(e.steps[p] - gap) <= 1e-9;
        }
        regular += ok;
    }
    return {good == checked && regular == 20, std::to_string(good) + "/" + std::to_string(checked) +
                                                  " embeddings sum to 2pi on the unit circle, " +
                                                  std::to_string(regular) + "/20 equal-edge tours regular"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism(const std::string& cli, const fs::path& work) {
    fs::create_directories(work);
    std::string detail;
    bool pass = true;
    for (const std::string format : {"json", "csv"}) {
        std::vector<std::string> texts;
        for (const std::string mode : {"a", "b", "parallel"}) {
            const fs::path out = work / ("report_" + mode + "." + format);
            fs::remove(out);
            std::string cmd = "\"" + cli + "\" solve --instance \"" + testing::data_path("djibouti38").string() +
                              "\" --strategy hybrid --clusters 4 --iterations 20 --runs 6 --seed 99 --trace" +
                              " --sweeps 300 --reads 4 --format " + format + " --output \"" + out.string() + "\" 2>>\"" + (work / "cli.log").string() + "\"";
            if (mode == "parallel") cmd += " --parallel";
            if (std::system(cmd.c_str()) != 0) return {false, "qls-tsp failed: " + cmd};
            texts.push_back(slurp(out));
        }
        const bool same = !texts[0].empty() && texts[0] == texts[1] && texts[0] == texts[2];
        pass = pass && same;
        detail += format + (same ? " identical" : " differs") + " (" + std::to_string(texts[0].size()) + " bytes); ";
    }
    return {pass, "repeat and --parallel reports: " + detail};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string cli = QLS_TSP_CLI;
    std::string work = "acceptance_work";
    std::vector<int> only;
    app.add_option("--cli", cli, "qls-tsp binary used for the determinism check")->capture_default_str();
    app.add_option("--work-dir", work, "Scratch directory")->capture_default_str();
    app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    Experiments ex;
    const std::map<int, std::function<Verdict()>> criteria{
        {1, [&] { return optimum_ulysses16(ex); }},
        {2, [&] { return near_optimum_djibouti38(ex); }},
        {3, [&] { return near_optimum_att48(ex); }},
        {4, [&] { return variable_reduction(ex); }},
        {5, [] { return qubo_oracle(); }},
        {6, [] { return sa_quality(); }},
        {7, [] { return monotone_improvement(); }},
        {8, [] { return circle_embedding(); }},
        {9, [&] { return determinism(cli, work); }},
    };
    const std::set<int> selected(only.begin(), only.end());

    int failures = 0;
    for (const auto& [id, check] : criteria) {
        if (!selected.empty() && !selected.count(id)) continue;
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
