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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qls/tsplib.hpp"

namespace qls {

double tour_length(std::span<const City> order, const DistanceMatrix& matrix, bool closed);

/// A closed tour: order[n-1] connects back to order[0]. Immutable; the length
/// is cached on construction.
class Tour {
 public:
    Tour() = default;
    Tour(std::vector<City> order, const DistanceMatrix& matrix)
            : order_(std::move(order)), length_(tour_length(order_, matrix, true)) {}

    /// Trusts `length`; validate_tour() is the cross-check.
    static Tour with_length(std::vector<City> order, double length) {
        Tour t;
        t.order_ = std::move(order);
        t.length_ = length;
        return t;
    }

    const std::vector<City>& order() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }
    double length() const noexcept { return length_; }
    City operator[](std::size_t pos) const noexcept { return order_[pos]; }

    friend bool operator==(const Tour&, const Tour&) = default;

 private:
    std::vector<City> order_;
    double length_ = 0.0;
};

/// A contiguous run of tour positions starting at `start` (wrapping around the
/// tour end). cities.front() and cities.back() are fixed endpoints.
struct Segment {
    std::size_t start = 0;
    std::vector<City> cities;

    std::size_t size() const noexcept { return cities.size(); }
    std::size_t interior_count() const noexcept { return cities.size() < 2 ? 0 : cities.size() - 2; }
    City front() const { return cities.front(); }
    City back() const { return cities.back(); }
    std::span<const City> interior() const {
        return std::span<const City>(cities).subspan(1, interior_count());
    }
};

/// Reads `count` cities of `tour` starting at position `start`, wrapping.
Segment segment_at(const Tour& tour, std::size_t start, std::size_t count);

struct TourViolation {
    enum class Kind { CityOutOfRange, DuplicateCity, MissingCity, StaleLength };
    Kind kind;
    std::string message;
};

std::optional<TourViolation> validate_tour(const Tour& tour, std::size_t n,
                                           const DistanceMatrix& matrix);

class InteriorMismatch : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Replaces the interior of `slice` in `tour` with `new_interior`. The length
/// is updated incrementally from the two open segment lengths.
Tour splice_segment(const Tour& tour, const Segment& slice, std::span<const City> new_interior,
                    const DistanceMatrix& matrix);

}  // namespace qls
