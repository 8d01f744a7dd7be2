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

#include "qls/tour.hpp"

#include <algorithm>
#include <cmath>

namespace qls {

double tour_length(std::span<const City> order, const DistanceMatrix& matrix, bool closed) {
    double total = 0.0;
    for (std::size_t i = 1; i < order.size(); ++i) total += matrix(order[i - 1], order[i]);
    if (closed && order.size() > 1) total += matrix(order.back(), order.front());
    return total;
}

Segment segment_at(const Tour& tour, std::size_t start, std::size_t count) {
    const std::size_t n = tour.size();
    if (n == 0 || count > n || start >= n) {
        throw std::invalid_argument("segment does not fit the tour");
    }
    Segment s;
    s.start = start;
    s.cities.reserve(count);
    for (std::size_t i = 0; i < count; ++i) s.cities.push_back(tour[(start + i) % n]);
    return s;
}

std::optional<TourViolation> validate_tour(const Tour& tour, std::size_t n,
                                           const DistanceMatrix& matrix) {
    using Kind = TourViolation::Kind;
    std::vector<bool> seen(n, false);
    for (std::size_t pos = 0; pos < tour.size(); ++pos) {
        const City c = tour[pos];
        if (c >= n) {
            return TourViolation{Kind::CityOutOfRange, "city " + std::to_string(c) + " at position " +
                                                           std::to_string(pos) + " is out of range"};
        }
        if (seen[c]) {
            return TourViolation{Kind::DuplicateCity, "city " + std::to_string(c) +
                                                          " appears twice (again at position " +
                                                          std::to_string(pos) + ")"};
        }
        seen[c] = true;
    }
    for (City c = 0; c < n; ++c) {
        if (!seen[c]) return TourViolation{Kind::MissingCity, "city " + std::to_string(c) + " missing"};
    }
    const double actual = tour_length(tour.order(), matrix, true);
    const double tol = 1e-6 * std::max(1.0, std::abs(actual));
    if (std::abs(actual - tour.length()) > tol) {
        return TourViolation{Kind::StaleLength, "cached length " + std::to_string(tour.length()) +
                                                    " differs from recomputed " +
                                                    std::to_string(actual)};
    }
    return std::nullopt;
}

Tour splice_segment(const Tour& tour, const Segment& slice, std::span<const City> new_interior,
                    const DistanceMatrix& matrix) {
    const std::size_t n = tour.size();
    const auto old_interior = slice.interior();
    if (new_interior.size() != old_interior.size()) {
        throw InteriorMismatch("new interior has " + std::to_string(new_interior.size()) +
                               " cities, slice interior has " + std::to_string(old_interior.size()));
    }
    std::vector<City> a(old_interior.begin(), old_interior.end());
    std::vector<City> b(new_interior.begin(), new_interior.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InteriorMismatch("new interior is not a permutation of the slice interior");

    std::vector<City> order = tour.order();
    for (std::size_t i = 0; i < slice.size(); ++i) {
        if (order[(slice.start + i) % n] != slice.cities[i]) {
            throw InteriorMismatch("slice does not match the tour at position " +
                                   std::to_string((slice.start + i) % n));
        }
    }

    std::vector<City> replaced;
    replaced.reserve(slice.size());
    replaced.push_back(slice.front());
    replaced.insert(replaced.end(), new_interior.begin(), new_interior.end());
    replaced.push_back(slice.back());
    for (std::size_t i = 0; i < new_interior.size(); ++i) {
        order[(slice.start + 1 + i) % n] = new_interior[i];
    }

    const double delta = tour_length(replaced, matrix, false) - tour_length(slice.cities, matrix, false);
    return Tour::with_length(std::move(order), tour.length() + delta);
}

}  // namespace qls
