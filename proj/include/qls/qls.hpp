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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qls/slicing.hpp"
#include "qls/solvers.hpp"
#include "qls/tour.hpp"
#include "qls/tsplib.hpp"

namespace qls {

enum class SolverKind { Sa, Exact };

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> solver_kind_from(std::string_view name);

/// How slice models are penalized: default_penalty or annealing_penalty.
enum class PenaltyRule { Dominant, Annealing };

struct QlsConfig {
    Strategy strategy = Strategy::Hybrid;
    std::size_t k = 2;
    std::size_t iterations = 100;
    SolverKind solver = SolverKind::Sa;
    SaParams sa_params;
    std::uint64_t seed = 0;
    bool parallel_slices = false;
    /// Replaces the backend selected by `solver` when set.
    std::shared_ptr<const Solver> custom_solver;
    /// Unset: Dominant for the exact backend, Annealing for everything else.
    std::optional<PenaltyRule> penalty;
};

class ConfigError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Throws ConfigError unless iterations >= 1 and 2 <= k <= n/2.
void check_config(const QlsConfig& config, std::size_t n);

std::shared_ptr<const Solver> make_solver(const QlsConfig& config);

PenaltyRule penalty_rule(const QlsConfig& config);

struct SliceRecord {
    std::size_t start = 0;     // tour position of the first endpoint
    std::size_t cities = 0;    // m, endpoints included
    std::size_t num_vars = 0;  // variables of the model built, 0 when the slice has no interior
    bool solved = false;
    bool accepted = false;
};

struct IterationRecord {
    std::size_t iteration = 0;
    Strategy method = Strategy::Random;  // slicing method actually used
    double length = 0.0;                 // tour length after the iteration
    std::vector<SliceRecord> slices;
};

struct QlsTrace {
    Tour initial;
    std::vector<IterationRecord> iterations;
    Tour final_tour;
};

struct SliceOutcome {
    bool accepted = false;
    Tour tour;
};

/// Solves the slice's QUBO and decodes it to a new interior order. Returns
/// nothing when the solver fails or its answer is not one-hot valid.
std::optional<std::vector<City>> propose_interior(const Segment& slice, const Solver& solver,
                                                  const DistanceMatrix& matrix, std::uint64_t seed,
                                                  PenaltyRule rule = PenaltyRule::Dominant);

/// Splices `interior` into `tour` only if it makes the slice strictly shorter.
SliceOutcome accept_if_shorter(const Tour& tour, const Segment& slice, const std::vector<City>& interior,
                               const DistanceMatrix& matrix);

/// propose_interior followed by accept_if_shorter.
SliceOutcome improve_slice(const Tour& tour, const Segment& slice, const Solver& solver,
                           const DistanceMatrix& matrix, std::uint64_t seed,
                           PenaltyRule rule = PenaltyRule::Dominant);

/// Starts from the convex hull insertion tour and runs `config.iterations`
/// rounds of slice, solve, accept. Each round plans once against the tour it
/// starts from; accepted splices are applied in slice order.
QlsTrace run_qls(const Instance& instance, const QlsConfig& config);
QlsTrace run_qls(const Instance& instance, const DistanceMatrix& matrix, const QlsConfig& config);

}  // namespace qls
