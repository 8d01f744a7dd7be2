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

#include "qls/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qls/random.hpp"

namespace qls {

namespace {

// Compressed adjacency of the quadratic terms, both directions.
struct Adjacency {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> neighbors;
    std::vector<double> coeffs;

    explicit Adjacency(const Qubo& q) : offsets(q.num_vars + 1, 0) {
        for (const auto& t : q.quadratic) {
            ++offsets[t.i + 1];
            ++offsets[t.j + 1];
        }
        for (std::size_t v = 0; v < q.num_vars; ++v) offsets[v + 1] += offsets[v];
        neighbors.resize(offsets.back());
        coeffs.resize(offsets.back());
        std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
        for (const auto& t : q.quadratic) {
            neighbors[fill[t.i]] = t.j;
            coeffs[fill[t.i]++] = t.coeff;
            neighbors[fill[t.j]] = t.i;
            coeffs[fill[t.j]++] = t.coeff;
        }
    }
};

// Local fields h_i = linear_i + sum_j q_ij x_j; flipping i changes the energy
// by +h_i (0 -> 1) or -h_i (1 -> 0).
void flip(std::size_t v, Bits& bits, std::vector<double>& field, const Adjacency& adj) {
    bits[v] ^= 1;
    const double sign = bits[v] ? 1.0 : -1.0;
    for (std::size_t e = adj.offsets[v]; e < adj.offsets[v + 1]; ++e) {
        field[adj.neighbors[e]] += sign * adj.coeffs[e];
    }
}

bool lex_less(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    if (diff == 0) return false;
    return (a & (diff & (~diff + 1))) == 0;
}

bool lex_less(const Bits& a, const Bits& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

BetaRange default_beta_range(const Qubo& qubo) {
    const double max_c = qubo.max_abs_coeff();
    double min_c = qubo.min_objective_coeff.value_or(qubo.min_abs_nonzero_coeff());
    if (!(max_c > 0.0)) return {1.0, 50.0};
    if (!(min_c > 0.0)) min_c = max_c;
    BetaRange r{1.0 / max_c, 50.0 / min_c};
    if (!(r.initial < r.final)) r.final = 50.0 * r.initial;
    return r;
}

SolverResult solve_sa(const Qubo& qubo, const SaParams& params) {
    if (params.sweeps < 1 || params.reads < 1) throw std::invalid_argument("sweeps and reads must be at least 1");
    const BetaRange defaults = default_beta_range(qubo);
    const double beta0 = params.beta_initial.value_or(defaults.initial);
    const double beta1 = params.beta_final.value_or(defaults.final);
    if (!(beta0 > 0.0 && beta0 < beta1)) throw std::invalid_argument("need 0 < beta_initial < beta_final");

    const std::size_t n = qubo.num_vars;
    SolverResult result;
    result.samples = params.reads;
    if (n == 0) {
        result.energy = qubo.offset;
        return result;
    }

    const Adjacency adj(qubo);
    std::vector<double> betas(params.sweeps);
    for (std::size_t s = 0; s < params.sweeps; ++s) {
        const double t = params.sweeps == 1 ? 1.0 : static_cast<double>(s) / static_cast<double>(params.sweeps - 1);
        betas[s] = beta0 * std::pow(beta1 / beta0, t);
    }

    Bits best_bits;
    double best_energy = std::numeric_limits<double>::infinity();

    Bits bits(n);
    std::vector<double> field(n);
    for (std::size_t read = 0; read < params.reads; ++read) {
        Rng rng(derive_seed(params.seed, {read}));
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
        field = qubo.linear;
        for (const auto& t : qubo.quadratic) {
            if (bits[t.j]) field[t.i] += t.coeff;
            if (bits[t.i]) field[t.j] += t.coeff;
        }
        double energy = qubo.energy(bits);
        double read_best = energy;
        Bits read_best_bits = bits;

        for (const double beta : betas) {
            for (std::size_t v = 0; v < n; ++v) {
                const double delta = bits[v] ? -field[v] : field[v];
                if (delta > 0.0) {
                    const double x = beta * delta;
                    if (x > 40.0 || uniform_real(rng) >= std::exp(-x)) continue;
                }
                flip(v, bits, field, adj);
                energy += delta;
                if (energy < read_best) {
                    read_best = energy;
                    read_best_bits = bits;
                }
            }
        }

        // Accumulated deltas can drift; compare on exact re-evaluations.
        const double exact = qubo.energy(read_best_bits);
        if (exact < best_energy || (exact == best_energy && lex_less(read_best_bits, best_bits))) {
            best_energy = exact;
            best_bits = read_best_bits;
        }
    }

    result.bits = std::move(best_bits);
    result.energy = best_energy;
    return result;
}

SolverResult solve_exact(const Qubo& qubo) {
    const std::size_t n = qubo.num_vars;
    if (n > kMaxExactVars) {
        throw TooManyVariables("exact solver handles at most " + std::to_string(kMaxExactVars) +
                               " variables, got " + std::to_string(n));
    }
    SolverResult result;
    result.samples = std::size_t{1} << n;
    if (n == 0) {
        result.energy = qubo.offset;
        return result;
    }

    const Adjacency adj(qubo);
    Bits bits(n, 0);
    std::vector<double> field = qubo.linear;
    double energy = qubo.offset;
    std::uint32_t state = 0;
    std::uint32_t best_state = 0;
    double best = energy;

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto v = static_cast<std::size_t>(std::countr_zero(step));
        energy += bits[v] ? -field[v] : field[v];
        flip(v, bits, field, adj);
        state ^= std::uint32_t{1} << v;

        const double eps = 1e-9 * std::max(1.0, std::abs(best));
        if (energy < best - eps || (energy <= best + eps && lex_less(state, best_state))) {
            best = energy;
            best_state = state;
        }
    }

    result.bits.resize(n);
    for (std::size_t v = 0; v < n; ++v) result.bits[v] = (best_state >> v) & 1u;
    result.energy = qubo.energy(result.bits);
    return result;
}

PathOracleResult permutation_oracle(const Segment& slice, const DistanceMatrix& matrix) {
    if (slice.size() < 2) throw std::invalid_argument("slice needs two endpoints");
    if (slice.interior_count() > kMaxOracleInterior) {
        throw TooManyVariables("permutation oracle handles at most " + std::to_string(kMaxOracleInterior) +
                               " interior cities");
    }
    std::vector<City> path = slice.cities;
    std::sort(path.begin() + 1, path.end() - 1);

    PathOracleResult best;
    best.length = std::numeric_limits<double>::infinity();
    do {
        const double len = tour_length(path, matrix, false);
        if (len < best.length) {
            best.length = len;
            best.interior.assign(path.begin() + 1, path.end() - 1);
        }
    } while (std::next_permutation(path.begin() + 1, path.end() - 1));
    return best;
}

SolverResult SaSolver::solve(const Qubo& qubo, std::uint64_t seed) const {
    SaParams p = params_;
    p.seed = seed;
    return solve_sa(qubo, p);
}

std::string encode_request(const SolveRequest& request) {
    return "reads " + std::to_string(request.reads) + " seed " + std::to_string(request.seed) + "\n" +
           to_text(request.qubo);
}

SolveRequest decode_request(std::string_view text) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) throw std::invalid_argument("request has no header line");
    std::istringstream head{std::string(text.substr(0, nl))};
    SolveRequest req;
    std::string reads_tag;
    std::string seed_tag;
    if (!(head >> reads_tag >> req.reads >> seed_tag >> req.seed) || reads_tag != "reads" || seed_tag != "seed") {
        throw std::invalid_argument("request header must be 'reads <n> seed <u64>'");
    }
    req.qubo = qubo_from_text(text.substr(nl + 1));
    return req;
}

std::string encode_response(std::span<const Sample> samples) {
    std::string out;
    for (const auto& s : samples) {
        for (const auto b : s.bits) out += b ? '1' : '0';
        out += ' ';
        out += format_double(s.energy);
        out += '\n';
    }
    return out;
}

std::vector<Sample> decode_response(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Sample> out;
    std::string bits;
    double energy = 0.0;
    while (in >> bits >> energy) {
        Sample s;
        s.energy = energy;
        s.bits.reserve(bits.size());
        for (const char c : bits) {
            if (c != '0' && c != '1') throw std::invalid_argument("sample bitstring must be 0/1");
            s.bits.push_back(c == '1' ? 1 : 0);
        }
        out.push_back(std::move(s));
    }
    if (!in.eof()) throw std::invalid_argument("malformed sample line");
    return out;
}

std::string LoopbackTransport::exchange(std::string_view request) {
    const SolveRequest req = decode_request(request);
    std::vector<Sample> samples;
    samples.reserve(req.reads);
    for (std::size_t r = 0; r < req.reads; ++r) {
        SolverResult res = backend_->solve(req.qubo, derive_seed(req.seed, {r}));
        samples.push_back(Sample{std::move(res.bits), res.energy});
    }
    return encode_response(samples);
}

SolverResult RemoteSolver::solve(const Qubo& qubo, std::uint64_t seed) const {
    const std::vector<Sample> samples =
        decode_response(transport_->exchange(encode_request(SolveRequest{qubo, reads_, seed})));
    if (samples.empty()) throw std::runtime_error("remote solver returned no samples");

    SolverResult best;
    best.energy = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (s.bits.size() != qubo.num_vars) throw std::runtime_error("remote sample has the wrong length");
        const double e = qubo.energy(s.bits);
        if (e < best.energy || (e == best.energy && lex_less(s.bits, best.bits))) {
            best.energy = e;
            best.bits = s.bits;
        }
    }
    best.samples = samples.size();
    return best;
}

}  // namespace qls
