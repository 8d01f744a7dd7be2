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
#include <string_view>
#include <vector>

#include "qls/random.hpp"
#include "qls/tour.hpp"
#include "qls/tsplib.hpp"

namespace qls {

/// Tour positions placed on the unit circle with arc lengths proportional to
/// the tour edges leaving them: position p sits at the cumulative angle of
/// edges 0..p-1, so position 0 is at angle 0.
struct CircleEmbedding {
    std::vector<double> edge_lengths;  // d_p = d(order[p], order[p+1 mod n])
    std::vector<double> steps;         // 2*pi*d_p/C
    std::vector<double> angles;        // one per tour position, angles[0] == 0
    std::vector<Point> points;
    double circumference = 0.0;

    std::size_t size() const noexcept { return angles.size(); }
};

class ZeroCircumference : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

class InvalidClusterCount : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

CircleEmbedding embed_on_circle(const Tour& tour, const DistanceMatrix& matrix);

struct Clustering {
    std::vector<Point> centroids;
    std::vector<std::size_t> assignment;  // per point
    std::size_t iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding, each run stopping at an
/// assignment fixed point or after `max_iterations`. Of `restarts` seeded
/// runs the one with the smallest within-cluster sum of squares is kept.
Clustering kmeans_cluster(std::span<const Point> points, std::size_t k, Rng& rng,
                          std::size_t max_iterations = 100, std::size_t restarts = 50);

/// Sum of squared distances of each point to its assigned centroid.
double within_cluster_ss(std::span<const Point> points, const Clustering& clustering);

/// k strictly increasing cut positions in [0, n). Slice j runs from cuts[j]
/// to cuts[j+1] inclusive (the last slice wraps to cuts[0]), so neighbouring
/// slices share their boundary city.
struct SlicePlan {
    std::vector<std::size_t> cuts;
    std::size_t n = 0;

    std::size_t size() const noexcept { return cuts.size(); }
    /// Number of tour positions in slice j, boundaries included.
    std::size_t slice_size(std::size_t j) const;

    friend bool operator==(const SlicePlan&, const SlicePlan&) = default;
};

/// Throws std::invalid_argument if the plan is malformed.
void check_plan(const SlicePlan& plan);

/// Materializes the plan's slices against `tour`.
std::vector<Segment> plan_segments(const Tour& tour, const SlicePlan& plan);

enum class Strategy { KMeans, AntiKMeans, Random, Hybrid, HybridAnti };

std::string_view to_string(Strategy s);
std::optional<Strategy> strategy_from(std::string_view name);

/// Each slice is the arc of positions closest in angle to one k-means
/// centroid. Cuts are the first position of each arc.
SlicePlan kmeans_slices(const CircleEmbedding& embedding, std::size_t k, Rng& rng);

/// Cuts at the positions nearest in angle to the k-means centroids.
SlicePlan anti_kmeans_slices(const CircleEmbedding& embedding, std::size_t k, Rng& rng);

/// Equally spaced cuts floor(j*n/k), each shifted by an independent uniform
/// displacement in [-bound, bound] with bound = ceil(n / 2k). Collisions probe
/// forward to the next free position.
SlicePlan random_slices(std::size_t n, std::size_t k, Rng& rng);

/// random_slices with an explicit displacement bound.
SlicePlan random_slices(std::size_t n, std::size_t k, std::size_t bound, Rng& rng);

/// The slicing method a strategy uses at `iteration`. Hybrid strategies use
/// random slicing on even iterations, starting with iteration 0.
Strategy method_for_iteration(Strategy strategy, std::size_t iteration);

SlicePlan plan_for_iteration(Strategy strategy, std::size_t iteration, const Tour& tour,
                             const DistanceMatrix& matrix, std::size_t k, Rng& rng);

}  // namespace qls
