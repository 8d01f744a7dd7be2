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

#include "qls/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace qls {

double Qubo::energy(std::span<const std::uint8_t> bits) const {
    if (bits.size() != num_vars) throw std::invalid_argument("assignment size does not match the model");
    double e = offset;
    for (std::size_t i = 0; i < num_vars; ++i) {
        if (bits[i]) e += linear[i];
    }
    for (const auto& t : quadratic) {
        if (bits[t.i] && bits[t.j]) e += t.coeff;
    }
    return e;
}

double Qubo::max_abs_coeff() const {
    double m = 0.0;
    for (const double v : linear) m = std::max(m, std::abs(v));
    for (const auto& t : quadratic) m = std::max(m, std::abs(t.coeff));
    return m;
}

double Qubo::min_abs_nonzero_coeff() const {
    double m = std::numeric_limits<double>::infinity();
    for (const double v : linear) {
        if (v != 0.0) m = std::min(m, std::abs(v));
    }
    for (const auto& t : quadratic) {
        if (t.coeff != 0.0) m = std::min(m, std::abs(t.coeff));
    }
    return std::isfinite(m) ? m : 0.0;
}

namespace {

double max_pairwise(const Segment& slice, const DistanceMatrix& matrix) {
    double max_d = 0.0;
    for (std::size_t a = 0; a < slice.size(); ++a) {
        for (std::size_t b = a + 1; b < slice.size(); ++b) {
            max_d = std::max(max_d, matrix(slice.cities[a], slice.cities[b]));
        }
    }
    return max_d;
}

}  // namespace

double default_penalty(const Segment& slice, const DistanceMatrix& matrix) {
    const double m = static_cast<double>(slice.size());
    const double a = 2.0 * max_pairwise(slice, matrix) * (m - 1.0);
    return a > 0.0 ? a : 1.0;
}

double annealing_penalty(const Segment& slice, const DistanceMatrix& matrix) {
    const double a = max_pairwise(slice, matrix);
    return a > 0.0 ? a : 1.0;
}

SliceQubo build_slice_qubo(const Segment& slice, const DistanceMatrix& matrix) {
    return build_slice_qubo(slice, matrix, default_penalty(slice, matrix));
}

SliceQubo build_slice_qubo(const Segment& slice, const DistanceMatrix& matrix, double penalty) {
    if (slice.interior_count() == 0) throw EmptyQubo("slice has no interior cities");
    if (!(penalty > 0.0)) throw std::invalid_argument("penalty must be positive");

    SliceQubo out;
    const auto interior = slice.interior();
    out.cities.assign(interior.begin(), interior.end());
    out.penalty = penalty;
    const std::size_t q = out.cities.size();
    const City start = slice.front();
    const City end = slice.back();

    Qubo& model = out.qubo;
    model.num_vars = q * q;
    model.linear.assign(model.num_vars, 0.0);

    // A*(1 - sum x)^2 over each of the q positions and q cities expands to
    // 2Aq + sum(-2A x) + sum(2A x x') over pairs sharing a row or column.
    model.offset = 2.0 * penalty * static_cast<double>(q);
    std::map<std::pair<std::size_t, std::size_t>, double> pairs;
    auto add_pair = [&](std::size_t u, std::size_t v, double c) {
        if (u > v) std::swap(u, v);
        pairs[{u, v}] += c;
    };

    double min_obj = std::numeric_limits<double>::infinity();
    auto note_objective = [&](double d) {
        if (d > 0.0) min_obj = std::min(min_obj, d);
    };

    for (std::size_t r = 0; r < q; ++r) {
        for (std::size_t p = 0; p < q; ++p) {
            const std::size_t v = out.variable(r, p);
            model.linear[v] -= 2.0 * penalty;
            if (p == 0) {
                model.linear[v] += matrix(start, out.cities[r]);
                note_objective(matrix(start, out.cities[r]));
            }
            if (p + 1 == q) {
                model.linear[v] += matrix(out.cities[r], end);
                note_objective(matrix(out.cities[r], end));
            }
            for (std::size_t p2 = p + 1; p2 < q; ++p2) add_pair(v, out.variable(r, p2), 2.0 * penalty);
            for (std::size_t r2 = r + 1; r2 < q; ++r2) add_pair(v, out.variable(r2, p), 2.0 * penalty);
        }
    }

    // consecutive interior positions
    for (std::size_t p = 0; p + 1 < q; ++p) {
        for (std::size_t u = 0; u < q; ++u) {
            for (std::size_t c = 0; c < q; ++c) {
                if (u == c) continue;
                const double d = matrix(out.cities[u], out.cities[c]);
                note_objective(d);
                if (d != 0.0) add_pair(out.variable(u, p), out.variable(c, p + 1), d);
            }
        }
    }

    model.quadratic.reserve(pairs.size());
    for (const auto& [key, c] : pairs) {
        if (c != 0.0) model.quadratic.push_back({key.first, key.second, c});
    }
    if (std::isfinite(min_obj)) model.min_objective_coeff = min_obj;
    return out;
}

Decoded decode_solution(std::span<const std::uint8_t> bits, const SliceQubo& model) {
    const std::size_t q = model.positions();
    if (bits.size() != q * q) throw std::invalid_argument("assignment size does not match the model");

    Decoded out;
    out.interior.reserve(q);
    for (std::size_t p = 0; p < q; ++p) {
        std::size_t count = 0;
        std::size_t slot = 0;
        for (std::size_t r = 0; r < q; ++r) {
            if (bits[model.variable(r, p)]) {
                ++count;
                slot = r;
            }
        }
        if (count != 1) {
            out.interior.clear();
            out.violation = OneHotViolation{OneHotViolation::Kind::Position, p + 1, count,
                                            "position " + std::to_string(p + 1) + " holds " +
                                                std::to_string(count) + " cities"};
            return out;
        }
        out.interior.push_back(model.cities[slot]);
    }
    for (std::size_t r = 0; r < q; ++r) {
        std::size_t count = 0;
        for (std::size_t p = 0; p < q; ++p) count += bits[model.variable(r, p)] ? 1 : 0;
        if (count != 1) {
            out.interior.clear();
            out.violation = OneHotViolation{OneHotViolation::Kind::City, r, count,
                                            "city " + std::to_string(model.cities[r]) + " placed " +
                                                std::to_string(count) + " times"};
            return out;
        }
    }
    return out;
}

Bits encode_order(std::span<const City> interior, const SliceQubo& model) {
    const std::size_t q = model.positions();
    if (interior.size() != q) throw std::invalid_argument("interior order has the wrong length");
    Bits bits(q * q, 0);
    for (std::size_t p = 0; p < q; ++p) {
        const auto it = std::find(model.cities.begin(), model.cities.end(), interior[p]);
        if (it == model.cities.end()) throw std::invalid_argument("city is not interior to the slice");
        bits[model.variable(static_cast<std::size_t>(it - model.cities.begin()), p)] = 1;
    }
    return bits;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_text(const Qubo& qubo) {
    std::string out = "offset " + format_double(qubo.offset) + " " + std::to_string(qubo.num_vars) + "\n";
    // Merge linear (i, i) and quadratic (i, j) lines in row-major order.
    std::size_t t = 0;
    for (std::size_t i = 0; i < qubo.num_vars; ++i) {
        if (qubo.linear[i] != 0.0) {
            out += std::to_string(i) + " " + std::to_string(i) + " " + format_double(qubo.linear[i]) + "\n";
        }
        for (; t < qubo.quadratic.size() && qubo.quadratic[t].i == i; ++t) {
            const auto& term = qubo.quadratic[t];
            out += std::to_string(term.i) + " " + std::to_string(term.j) + " " + format_double(term.coeff) + "\n";
        }
    }
    return out;
}

Qubo qubo_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    Qubo q;
    std::string tag;
    if (!(in >> tag >> q.offset >> q.num_vars) || tag != "offset") {
        throw std::invalid_argument("qubo text must start with 'offset <value> <num_vars>'");
    }
    q.linear.assign(q.num_vars, 0.0);
    std::map<std::pair<std::size_t, std::size_t>, double> pairs;
    std::size_t i = 0;
    std::size_t j = 0;
    double c = 0.0;
    while (in >> i >> j >> c) {
        if (i >= q.num_vars || j >= q.num_vars) throw std::invalid_argument("qubo variable index out of range");
        if (i == j) {
            q.linear[i] += c;
        } else {
            pairs[{std::min(i, j), std::max(i, j)}] += c;
        }
    }
    if (!in.eof()) throw std::invalid_argument("malformed qubo coefficient line");
    for (const auto& [key, coeff] : pairs) q.quadratic.push_back({key.first, key.second, coeff});
    return q;
}

}  // namespace qls
