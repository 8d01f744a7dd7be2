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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qls {

using City = std::size_t;

enum class Metric { Euc2d, Ceil2d, Geo, Att };

std::string_view to_string(Metric metric);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// A symmetric TSP instance with node coordinates.
///
/// Cities are 0-based and contiguous regardless of the numbering used in
/// the source file.
struct Instance {
    std::string name;
    std::size_t dimension = 0;
    std::vector<Point> coords;
    Metric metric = Metric::Euc2d;
};

/// Raised by parse_instance. `line()` is 1-based; 0 means the error is not
/// tied to a particular line (e.g. a missing keyword).
class ParseError : public std::runtime_error {
 public:
    enum class Kind {
        MalformedHeader,
        MissingKeyword,
        UnsupportedWeightType,
        BadCoordinate,
        CoordinateCountMismatch,
    };

    ParseError(Kind kind, std::size_t line, const std::string& what);

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

 private:
    Kind kind_;
    std::size_t line_;
};

Instance parse_instance(std::string_view content);

/// Reads and parses a `.tsp` file. Throws std::runtime_error if the file
/// cannot be opened and ParseError on malformed content.
Instance load_instance(const std::filesystem::path& path);

/// TSPLIB edge weight between two cities. Throws std::out_of_range for bad
/// indices.
double distance(const Instance& instance, City a, City b);

/// Dense symmetric n x n matrix of edge weights.
class DistanceMatrix {
 public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }

    double operator()(City a, City b) const noexcept { return data_[a * n_ + b]; }

    void set(City a, City b, double w) noexcept {
        data_[a * n_ + b] = w;
        data_[b * n_ + a] = w;
    }

 private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

DistanceMatrix build_distance_matrix(const Instance& instance);

}  // namespace qls
