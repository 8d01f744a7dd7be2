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

#include "qls/init.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace qls {

namespace {

double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

Hull convex_hull(std::span<const Point> coords) {
    if (coords.size() < 3) throw DegenerateHull("convex hull needs at least 3 points");

    std::vector<City> idx(coords.size());
    std::iota(idx.begin(), idx.end(), City{0});
    std::sort(idx.begin(), idx.end(), [&](City a, City b) {
        const Point pa = coords[a];
        const Point pb = coords[b];
        return std::tie(pa.x, pa.y, a) < std::tie(pb.x, pb.y, b);
    });

    std::vector<City> hull(2 * idx.size());
    std::size_t k = 0;
    // lower chain
    for (const City c : idx) {
        while (k >= 2 && cross(coords[hull[k - 2]], coords[hull[k - 1]], coords[c]) <= 0) --k;
        hull[k++] = c;
    }
    // upper chain
    const std::size_t lower = k + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
        while (k >= lower && cross(coords[hull[k - 2]], coords[hull[k - 1]], coords[*it]) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);  // last point repeats the first

    if (hull.size() < 3) throw DegenerateHull("all points are collinear");
    return Hull{std::move(hull)};
}

Tour convex_hull_insertion(const Instance& instance, const DistanceMatrix& matrix) {
    const std::size_t n = instance.dimension;
    Hull hull = convex_hull(instance.coords);

    std::vector<City> tour = std::move(hull.vertices);
    std::vector<bool> in_tour(n, false);
    for (const City c : tour) in_tour[c] = true;

    struct Choice {
        double ratio;
        double cost;
        City city;
        std::size_t edge;  // insert after tour[edge]
    };

    while (tour.size() < n) {
        Choice best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), n, 0};
        for (City c = 0; c < n; ++c) {
            if (in_tour[c]) continue;

            // cheapest edge for c; first position wins ties
            double best_cost = std::numeric_limits<double>::infinity();
            std::size_t best_edge = 0;
            for (std::size_t e = 0; e < tour.size(); ++e) {
                const City i = tour[e];
                const City j = tour[(e + 1) % tour.size()];
                const double cost = matrix(i, c) + matrix(c, j) - matrix(i, j);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_edge = e;
                }
            }

            const City i = tour[best_edge];
            const City j = tour[(best_edge + 1) % tour.size()];
            const double base = matrix(i, j);
            const double added = matrix(i, c) + matrix(c, j);
            double ratio = 0.0;
            if (base > 0.0) {
                ratio = added / base;
            } else {
                ratio = added > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
            }

            if (std::tie(ratio, best_cost, c) < std::tie(best.ratio, best.cost, best.city)) {
                best = Choice{ratio, best_cost, c, best_edge};
            }
        }
        tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(best.edge + 1), best.city);
        in_tour[best.city] = true;
    }
    return Tour(std::move(tour), matrix);
}

Tour nearest_neighbor_tour(const DistanceMatrix& matrix) {
    const std::size_t n = matrix.size();
    std::vector<City> order;
    order.reserve(n);
    std::vector<bool> used(n, false);
    City cur = 0;
    order.push_back(cur);
    used[cur] = true;
    while (order.size() < n) {
        City next = n;
        for (City c = 0; c < n; ++c) {
            if (!used[c] && (next == n || matrix(cur, c) < matrix(cur, next))) next = c;
        }
        used[next] = true;
        order.push_back(next);
        cur = next;
    }
    return Tour(std::move(order), matrix);
}

Tour initial_tour(const Instance& instance, const DistanceMatrix& matrix) {
    try {
        return convex_hull_insertion(instance, matrix);
    } catch (const DegenerateHull&) {
        return nearest_neighbor_tour(matrix);
    }
}

}  // namespace qls
