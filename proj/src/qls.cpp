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

#include "qls/qls.hpp"

#include <future>
#include <string>

#include "qls/init.hpp"
#include "qls/qubo.hpp"
#include "qls/random.hpp"

namespace qls {

namespace {

// Stream tags so plan and slice RNGs never share a seed.
constexpr std::uint64_t kPlanStream = 1;
constexpr std::uint64_t kSliceStream = 2;

}  // namespace

std::string_view to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::Sa: return "sa";
        case SolverKind::Exact: return "exact";
    }
    return "?";
}

std::optional<SolverKind> solver_kind_from(std::string_view name) {
    if (name == "sa") return SolverKind::Sa;
    if (name == "exact") return SolverKind::Exact;
    return std::nullopt;
}

void check_config(const QlsConfig& config, std::size_t n) {
    if (config.iterations < 1) throw ConfigError("iterations must be at least 1");
    if (config.k < 2) throw ConfigError("need at least 2 clusters");
    if (2 * config.k > n) {
        throw ConfigError("too many clusters (" + std::to_string(config.k) + ") for " + std::to_string(n) +
                          " cities; need k <= n/2");
    }
    if (config.sa_params.sweeps < 1 || config.sa_params.reads < 1) {
        throw ConfigError("sweeps and reads must be at least 1");
    }
}

std::shared_ptr<const Solver> make_solver(const QlsConfig& config) {
    if (config.custom_solver) return config.custom_solver;
    switch (config.solver) {
        case SolverKind::Exact: return std::make_shared<ExactSolver>();
        case SolverKind::Sa: break;
    }
    return std::make_shared<SaSolver>(config.sa_params);
}

PenaltyRule penalty_rule(const QlsConfig& config) {
    if (config.penalty) return *config.penalty;
    const bool exact = !config.custom_solver && config.solver == SolverKind::Exact;
    return exact ? PenaltyRule::Dominant : PenaltyRule::Annealing;
}

namespace {

struct Proposal {
    std::optional<std::vector<City>> interior;
    std::size_t num_vars = 0;  // size of the model handed to the solver
};

Proposal propose(const Segment& slice, const Solver& solver, const DistanceMatrix& matrix, std::uint64_t seed,
                 PenaltyRule rule) {
    Proposal p;
    if (slice.interior_count() == 0) return p;
    try {
        const double penalty = rule == PenaltyRule::Dominant ? default_penalty(slice, matrix)
                                                             : annealing_penalty(slice, matrix);
        const SliceQubo model = build_slice_qubo(slice, matrix, penalty);
        p.num_vars = model.qubo.num_vars;
        const SolverResult result = solver.solve(model.qubo, seed);
        Decoded decoded = decode_solution(result.bits, model);
        if (decoded.ok()) p.interior = std::move(decoded.interior);
    } catch (const std::exception&) {
        // a failing backend costs this slice its turn, nothing more
    }
    return p;
}

}  // namespace

std::optional<std::vector<City>> propose_interior(const Segment& slice, const Solver& solver,
                                                  const DistanceMatrix& matrix, std::uint64_t seed,
                                                  PenaltyRule rule) {
    return propose(slice, solver, matrix, seed, rule).interior;
}

SliceOutcome accept_if_shorter(const Tour& tour, const Segment& slice, const std::vector<City>& interior,
                               const DistanceMatrix& matrix) {
    std::vector<City> candidate;
    candidate.reserve(slice.size());
    candidate.push_back(slice.front());
    candidate.insert(candidate.end(), interior.begin(), interior.end());
    candidate.push_back(slice.back());
    if (tour_length(candidate, matrix, false) < tour_length(slice.cities, matrix, false)) {
        return {true, splice_segment(tour, slice, interior, matrix)};
    }
    return {false, tour};
}

SliceOutcome improve_slice(const Tour& tour, const Segment& slice, const Solver& solver,
                           const DistanceMatrix& matrix, std::uint64_t seed, PenaltyRule rule) {
    const auto interior = propose_interior(slice, solver, matrix, seed, rule);
    if (!interior) return {false, tour};
    return accept_if_shorter(tour, slice, *interior, matrix);
}

QlsTrace run_qls(const Instance& instance, const QlsConfig& config) {
    return run_qls(instance, build_distance_matrix(instance), config);
}

QlsTrace run_qls(const Instance& instance, const DistanceMatrix& matrix, const QlsConfig& config) {
    check_config(config, instance.dimension);
    const auto solver = make_solver(config);
    const PenaltyRule rule = penalty_rule(config);

    QlsTrace trace;
    trace.initial = initial_tour(instance, matrix);
    Tour current = trace.initial;
    trace.iterations.reserve(config.iterations);

    for (std::size_t it = 0; it < config.iterations; ++it) {
        Rng plan_rng(derive_seed(config.seed, {kPlanStream, it}));
        const SlicePlan plan = plan_for_iteration(config.strategy, it, current, matrix, config.k, plan_rng);
        const std::vector<Segment> slices = plan_segments(current, plan);

        auto seed_for = [&](std::size_t j) { return derive_seed(config.seed, {kSliceStream, it, j}); };
        std::vector<Proposal> proposals(slices.size());
        if (config.parallel_slices) {
            std::vector<std::future<Proposal>> jobs;
            jobs.reserve(slices.size());
            for (std::size_t j = 0; j < slices.size(); ++j) {
                jobs.push_back(std::async(std::launch::async, [&, j] {
                    return propose(slices[j], *solver, matrix, seed_for(j), rule);
                }));
            }
            for (std::size_t j = 0; j < slices.size(); ++j) proposals[j] = jobs[j].get();
        } else {
            for (std::size_t j = 0; j < slices.size(); ++j) {
                proposals[j] = propose(slices[j], *solver, matrix, seed_for(j), rule);
            }
        }

        IterationRecord record;
        record.iteration = it;
        record.method = method_for_iteration(config.strategy, it);
        record.slices.reserve(slices.size());
        for (std::size_t j = 0; j < slices.size(); ++j) {
            const Segment& slice = slices[j];
            SliceRecord sr;
            sr.start = slice.start;
            sr.cities = slice.size();
            sr.num_vars = proposals[j].num_vars;
            sr.solved = sr.num_vars > 0;
            if (proposals[j].interior) {
                // Interiors are disjoint and endpoints never move, so the slice
                // still reads the same against the updated tour.
                SliceOutcome outcome = accept_if_shorter(current, slice, *proposals[j].interior, matrix);
                sr.accepted = outcome.accepted;
                if (outcome.accepted) current = std::move(outcome.tour);
            }
            record.slices.push_back(sr);
        }
        record.length = current.length();
        trace.iterations.push_back(std::move(record));
    }

    // Re-derive the cached length so incremental drift cannot leak out.
    trace.final_tour = Tour(current.order(), matrix);
    return trace;
}

}  // namespace qls
