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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qls/qubo.hpp"
#include "qls/tour.hpp"

namespace qls {

struct SolverResult {
    Bits bits;
    double energy = 0.0;
    std::size_t samples = 0;

    friend bool operator==(const SolverResult&, const SolverResult&) = default;
};

struct SaParams {
    std::size_t sweeps = 1000;
    std::size_t reads = 10;
    // Derived from the model when unset, see default_beta_range().
    std::optional<double> beta_initial;
    std::optional<double> beta_final;
    std::uint64_t seed = 0;
};

struct BetaRange {
    double initial = 0.0;
    double final = 0.0;
};

/// initial = 1 / max|coeff|, final = 50 / (smallest nonzero objective coeff).
BetaRange default_beta_range(const Qubo& qubo);

/// Single-bit-flip Metropolis annealing over a geometric inverse-temperature
/// schedule, one sweep per temperature, best state over all reads returned.
/// Deterministic for a given seed.
SolverResult solve_sa(const Qubo& qubo, const SaParams& params);

inline constexpr std::size_t kMaxExactVars = 25;

class TooManyVariables : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Exhaustive Gray-code enumeration. Ties go to the lexicographically smallest
/// bit string (variable 0 first).
SolverResult solve_exact(const Qubo& qubo);

inline constexpr std::size_t kMaxOracleInterior = 9;

struct PathOracleResult {
    std::vector<City> interior;
    double length = 0.0;
};

/// Shortest open path front -> interior... -> back over all interior orders,
/// without going through a QUBO. Ties go to the lexicographically smallest
/// order.
PathOracleResult permutation_oracle(const Segment& slice, const DistanceMatrix& matrix);

/// A QUBO backend. Implementations keep no state between calls and may be
/// called concurrently.
class Solver {
 public:
    virtual ~Solver() = default;
    virtual SolverResult solve(const Qubo& qubo, std::uint64_t seed) const = 0;
    virtual std::string name() const = 0;
};

class SaSolver final : public Solver {
 public:
    explicit SaSolver(SaParams params = {}) : params_(params) {}
    SolverResult solve(const Qubo& qubo, std::uint64_t seed) const override;
    std::string name() const override { return "sa"; }
    const SaParams& params() const noexcept { return params_; }

 private:
    SaParams params_;
};

class ExactSolver final : public Solver {
 public:
    SolverResult solve(const Qubo& qubo, std::uint64_t) const override { return solve_exact(qubo); }
    std::string name() const override { return "exact"; }
};

// ---------------------------------------------------------------------------
// Remote solver wire format
//
// request:   reads <n> seed <u64>\n
//            <qubo text map, see to_text()>
// response:  one `<bitstring> <energy>` line per sample, e.g. `0110 -3.5`

struct Sample {
    Bits bits;
    double energy = 0.0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct SolveRequest {
    Qubo qubo;
    std::size_t reads = 1;
    std::uint64_t seed = 0;
};

std::string encode_request(const SolveRequest& request);
SolveRequest decode_request(std::string_view text);
std::string encode_response(std::span<const Sample> samples);
std::vector<Sample> decode_response(std::string_view text);

/// Byte-stream transport to a remote QUBO service. exchange() must be safe to
/// call concurrently.
class Transport {
 public:
    virtual ~Transport() = default;
    virtual std::string exchange(std::string_view request) = 0;
};

/// In-process "remote": decodes the request, runs `backend` once per read and
/// encodes the samples.
class LoopbackTransport final : public Transport {
 public:
    explicit LoopbackTransport(std::shared_ptr<const Solver> backend) : backend_(std::move(backend)) {}
    std::string exchange(std::string_view request) override;

 private:
    std::shared_ptr<const Solver> backend_;
};

/// Sends the model over a Transport and keeps the lowest-energy sample, whose
/// energy is re-evaluated locally.
class RemoteSolver final : public Solver {
 public:
    RemoteSolver(std::shared_ptr<Transport> transport, std::size_t reads)
            : transport_(std::move(transport)), reads_(reads) {}
    SolverResult solve(const Qubo& qubo, std::uint64_t seed) const override;
    std::string name() const override { return "remote"; }

 private:
    std::shared_ptr<Transport> transport_;
    std::size_t reads_;
};

}  // namespace qls
