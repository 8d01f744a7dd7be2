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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qls/tour.hpp"
#include "qls/tsplib.hpp"

namespace qls {

using Bits = std::vector<std::uint8_t>;

struct QuadraticTerm {
    std::size_t i = 0;  // i < j
    std::size_t j = 0;
    double coeff = 0.0;

    friend bool operator==(const QuadraticTerm&, const QuadraticTerm&) = default;
};

/// E(x) = offset + sum_i linear[i] x_i + sum_{i<j} q_ij x_i x_j
struct Qubo {
    std::size_t num_vars = 0;
    std::vector<double> linear;
    std::vector<QuadraticTerm> quadratic;  // sorted by (i, j), no duplicates
    double offset = 0.0;

    /// Smallest nonzero |coefficient| that belongs to the objective rather
    /// than to a penalty. Used for the default annealing schedule; unset for
    /// models that do not know their structure.
    std::optional<double> min_objective_coeff;

    double energy(std::span<const std::uint8_t> bits) const;
    double max_abs_coeff() const;
    double min_abs_nonzero_coeff() const;

    friend bool operator==(const Qubo&, const Qubo&) = default;
};

/// Fixed-endpoint path model for one slice. Variable x_{r,p} (interior city
/// slot r placed at interior position p) has index r * positions + p. For a
/// valid one-hot assignment the energy is exactly the open path length
/// front -> interior... -> back.
struct SliceQubo {
    Qubo qubo;
    std::vector<City> cities;  // interior cities by slot, in slice order
    double penalty = 0.0;

    std::size_t positions() const noexcept { return cities.size(); }
    std::size_t variable(std::size_t slot, std::size_t position) const noexcept {
        return slot * cities.size() + position;
    }
};

class EmptyQubo : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// 2 * (largest pairwise distance among the slice's cities) * (m - 1).
double default_penalty(const Segment& slice, const DistanceMatrix& matrix);

/// Largest pairwise distance among the slice's cities. Unlike default_penalty
/// the minimum-energy assignment is not guaranteed to be one-hot, but
/// single-flip annealing can still move between valid orders at temperatures
/// where path lengths matter.
double annealing_penalty(const Segment& slice, const DistanceMatrix& matrix);

SliceQubo build_slice_qubo(const Segment& slice, const DistanceMatrix& matrix, double penalty);
SliceQubo build_slice_qubo(const Segment& slice, const DistanceMatrix& matrix);

struct OneHotViolation {
    enum class Kind { Position, City };
    Kind kind;
    std::size_t index;  // 1-based interior position, or 0-based slot for Kind::City
    std::size_t count;  // how many bits were set
    std::string message;
};

struct Decoded {
    std::vector<City> interior;
    std::optional<OneHotViolation> violation;

    bool ok() const noexcept { return !violation.has_value(); }
};

/// Position-ordered interior cities, or the first broken one-hot constraint
/// (positions are checked before cities).
Decoded decode_solution(std::span<const std::uint8_t> bits, const SliceQubo& model);

/// Inverse of decode_solution for a valid interior order.
Bits encode_order(std::span<const City> interior, const SliceQubo& model);

/// Text map: first line `offset <value> <num_vars>`, then one `i j coeff`
/// line per nonzero coefficient with i <= j (i == j for linear terms).
std::string to_text(const Qubo& qubo);
Qubo qubo_from_text(std::string_view text);

}  // namespace qls
