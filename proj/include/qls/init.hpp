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

#include <span>
#include <stdexcept>
#include <vector>

#include "qls/tour.hpp"
#include "qls/tsplib.hpp"

namespace qls {

/// Hull vertices as city indices, counter-clockwise, collinear boundary
/// points dropped.
struct Hull {
    std::vector<City> vertices;
};

class DegenerateHull : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Andrew's monotone chain. Throws DegenerateHull for fewer than three
/// non-collinear points.
Hull convex_hull(std::span<const Point> coords);

/// Convex hull insertion: start from the hull polygon and repeatedly insert
/// the free city whose cheapest insertion edge (i, j) has the smallest ratio
/// (d(i,c) + d(c,j)) / d(i,j). Ties are broken by (ratio, cost, city index).
/// Hull geometry uses the raw coordinates; costs use `matrix`.
Tour convex_hull_insertion(const Instance& instance, const DistanceMatrix& matrix);

/// Greedy nearest-neighbour tour from city 0.
Tour nearest_neighbor_tour(const DistanceMatrix& matrix);

/// convex_hull_insertion, or nearest_neighbor_tour if the hull is degenerate.
Tour initial_tour(const Instance& instance, const DistanceMatrix& matrix);

}  // namespace qls
