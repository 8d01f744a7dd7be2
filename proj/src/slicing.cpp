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

#include "qls/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qls {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sq_dist(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::size_t nearest(std::span<const Point> centroids, Point p) {
    std::size_t best = 0;
    double best_d = sq_dist(centroids[0], p);
    for (std::size_t j = 1; j < centroids.size(); ++j) {
        const double d = sq_dist(centroids[j], p);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

double angular_gap(double a, double b) {
    const double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

// Angles of the centroids that have a direction; a centroid sitting on the
// origin (e.g. the mean of antipodal points) has none.
std::vector<double> centroid_angles(const Clustering& clustering) {
    std::vector<double> out;
    for (const Point c : clustering.centroids) {
        if (std::hypot(c.x, c.y) < 1e-12) continue;
        double phi = std::atan2(c.y, c.x);
        if (phi < 0.0) phi += kTwoPi;
        out.push_back(phi);
    }
    return out;
}

// Tops `cuts` up to k distinct positions with uniform random picks.
SlicePlan complete_plan(std::vector<std::size_t> cuts, std::size_t n, std::size_t k, Rng& rng) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    while (cuts.size() < k) {
        std::size_t pos = 0;
        do {
            pos = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
        } while (std::binary_search(cuts.begin(), cuts.end(), pos));
        cuts.insert(std::lower_bound(cuts.begin(), cuts.end(), pos), pos);
    }
    return SlicePlan{std::move(cuts), n};
}

void check_k_for_clustering(std::size_t n, std::size_t k) {
    if (k < 2 || k > n) {
        throw InvalidClusterCount("cluster count " + std::to_string(k) + " is outside [2, " +
                                  std::to_string(n) + "]");
    }
}

}  // namespace

CircleEmbedding embed_on_circle(const Tour& tour, const DistanceMatrix& matrix) {
    const std::size_t n = tour.size();
    CircleEmbedding e;
    e.edge_lengths.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        e.edge_lengths[p] = matrix(tour[p], tour[(p + 1) % n]);
        e.circumference += e.edge_lengths[p];
    }
    if (!(e.circumference > 0.0) || !std::isfinite(e.circumference)) {
        throw ZeroCircumference("tour has zero or non-finite length");
    }

    e.steps.resize(n);
    e.angles.resize(n);
    e.points.resize(n);
    double theta = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        e.steps[p] = kTwoPi * (e.edge_lengths[p] / e.circumference);
        e.angles[p] = theta;
        e.points[p] = Point{std::cos(theta), std::sin(theta)};
        theta += e.steps[p];
    }
    return e;
}

namespace {

Clustering lloyd(std::span<const Point> points, std::size_t k, Rng& rng, std::size_t max_iterations) {
    const std::size_t n = points.size();

    // k-means++ seeding
    Clustering cl;
    std::vector<bool> chosen(n, false);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::size_t first = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(n) - 1));
    cl.centroids.push_back(points[first]);
    chosen[first] = true;
    while (cl.centroids.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sq_dist(points[i], cl.centroids.back()));
            total += d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double r = uniform_real(rng) * total;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                pick = i;
                r -= d2[i];
                if (r < 0.0) break;
            }
        } else {
            // every point coincides with a centre already; take an unused one
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) free.push_back(i);
            }
            pick = free[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<std::int64_t>(free.size()) - 1))];
        }
        chosen[pick] = true;
        cl.centroids.push_back(points[pick]);
    }

    cl.assignment.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) cl.assignment[i] = nearest(cl.centroids, points[i]);

    std::vector<Point> sums(k);
    std::vector<std::size_t> counts(k);
    for (cl.iterations = 0; cl.iterations < max_iterations;) {
        std::fill(sums.begin(), sums.end(), Point{});
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[cl.assignment[i]].x += points[i].x;
            sums[cl.assignment[i]].y += points[i].y;
            ++counts[cl.assignment[i]];
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0) continue;  // empty cluster keeps its centroid
            const auto c = static_cast<double>(counts[j]);
            cl.centroids[j] = Point{sums[j].x / c, sums[j].y / c};
        }
        ++cl.iterations;

        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = nearest(cl.centroids, points[i]);
            if (j != cl.assignment[i]) {
                cl.assignment[i] = j;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return cl;
}

}  // namespace

Clustering kmeans_cluster(std::span<const Point> points, std::size_t k, Rng& rng, std::size_t max_iterations,
                          std::size_t restarts) {
    check_k_for_clustering(points.size(), k);
    Clustering best = lloyd(points, k, rng, max_iterations);
    double best_ss = within_cluster_ss(points, best);
    for (std::size_t r = 1; r < restarts; ++r) {
        Clustering cl = lloyd(points, k, rng, max_iterations);
        const double ss = within_cluster_ss(points, cl);
        if (ss < best_ss) {
            best = std::move(cl);
            best_ss = ss;
        }
    }
    return best;
}

double within_cluster_ss(std::span<const Point> points, const Clustering& clustering) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total += sq_dist(points[i], clustering.centroids[clustering.assignment[i]]);
    }
    return total;
}

std::size_t SlicePlan::slice_size(std::size_t j) const {
    const std::size_t a = cuts[j];
    const std::size_t b = cuts[(j + 1) % cuts.size()];
    return (b + n - a) % n + 1;
}

void check_plan(const SlicePlan& plan) {
    if (plan.cuts.size() < 2) throw std::invalid_argument("slice plan needs at least two cuts");
    for (std::size_t j = 0; j < plan.cuts.size(); ++j) {
        if (plan.cuts[j] >= plan.n) throw std::invalid_argument("cut position out of range");
        if (j > 0 && plan.cuts[j] <= plan.cuts[j - 1]) {
            throw std::invalid_argument("cut positions must be strictly increasing");
        }
    }
}

std::vector<Segment> plan_segments(const Tour& tour, const SlicePlan& plan) {
    check_plan(plan);
    if (plan.n != tour.size()) throw std::invalid_argument("slice plan was made for another tour size");
    std::vector<Segment> out;
    out.reserve(plan.size());
    for (std::size_t j = 0; j < plan.size(); ++j) {
        out.push_back(segment_at(tour, plan.cuts[j], plan.slice_size(j)));
    }
    return out;
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::KMeans: return "kmeans";
        case Strategy::AntiKMeans: return "anti-kmeans";
        case Strategy::Random: return "random";
        case Strategy::Hybrid: return "hybrid";
        case Strategy::HybridAnti: return "hybrid-anti";
    }
    return "?";
}

std::optional<Strategy> strategy_from(std::string_view name) {
    for (const auto s : {Strategy::KMeans, Strategy::AntiKMeans, Strategy::Random, Strategy::Hybrid,
                         Strategy::HybridAnti}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

SlicePlan kmeans_slices(const CircleEmbedding& embedding, std::size_t k, Rng& rng) {
    const std::size_t n = embedding.size();
    const Clustering cl = kmeans_cluster(embedding.points, k, rng);
    const std::vector<double> phi = centroid_angles(cl);
    if (phi.empty()) return complete_plan({}, n, k, rng);

    // Nearest centroid by angle. Because the angles increase with tour
    // position, each centroid owns one contiguous (cyclic) run of positions.
    std::vector<std::size_t> owner(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < phi.size(); ++j) {
            if (angular_gap(embedding.angles[p], phi[j]) < angular_gap(embedding.angles[p], phi[best])) {
                best = j;
            }
        }
        owner[p] = best;
    }

    std::vector<std::size_t> cuts;
    for (std::size_t p = 0; p < n; ++p) {
        if (owner[p] != owner[(p + n - 1) % n]) cuts.push_back(p);
    }
    return complete_plan(std::move(cuts), n, k, rng);
}

SlicePlan anti_kmeans_slices(const CircleEmbedding& embedding, std::size_t k, Rng& rng) {
    const std::size_t n = embedding.size();
    const Clustering cl = kmeans_cluster(embedding.points, k, rng);

    std::vector<std::size_t> cuts;
    for (const double phi : centroid_angles(cl)) {
        std::size_t best = 0;
        for (std::size_t p = 1; p < n; ++p) {
            if (angular_gap(embedding.angles[p], phi) < angular_gap(embedding.angles[best], phi)) best = p;
        }
        cuts.push_back(best);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.size() < 2) return random_slices(n, k, rng);
    return complete_plan(std::move(cuts), n, k, rng);
}

SlicePlan random_slices(std::size_t n, std::size_t k, Rng& rng) {
    if (k == 0) throw InvalidClusterCount("cluster count must be positive");
    return random_slices(n, k, (n + 2 * k - 1) / (2 * k), rng);
}

SlicePlan random_slices(std::size_t n, std::size_t k, std::size_t bound, Rng& rng) {
    if (k < 2 || 2 * k > n) {
        throw InvalidClusterCount("random slicing needs 2 <= k <= n/2, got k=" + std::to_string(k) +
                                  ", n=" + std::to_string(n));
    }
    const auto sn = static_cast<std::int64_t>(n);
    const auto b = static_cast<std::int64_t>(bound);
    std::vector<bool> taken(n, false);
    std::vector<std::size_t> cuts;
    cuts.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto base = static_cast<std::int64_t>(j * n / k);
        const std::int64_t shifted = base + uniform_int(rng, -b, b);
        auto pos = static_cast<std::size_t>(((shifted % sn) + sn) % sn);
        while (taken[pos]) pos = (pos + 1) % n;
        taken[pos] = true;
        cuts.push_back(pos);
    }
    std::sort(cuts.begin(), cuts.end());
    return SlicePlan{std::move(cuts), n};
}

Strategy method_for_iteration(Strategy strategy, std::size_t iteration) {
    switch (strategy) {
        case Strategy::Hybrid: return iteration % 2 == 0 ? Strategy::Random : Strategy::KMeans;
        case Strategy::HybridAnti: return iteration % 2 == 0 ? Strategy::Random : Strategy::AntiKMeans;
        default: return strategy;
    }
}

SlicePlan plan_for_iteration(Strategy strategy, std::size_t iteration, const Tour& tour,
                             const DistanceMatrix& matrix, std::size_t k, Rng& rng) {
    switch (method_for_iteration(strategy, iteration)) {
        case Strategy::KMeans: return kmeans_slices(embed_on_circle(tour, matrix), k, rng);
        case Strategy::AntiKMeans: return anti_kmeans_slices(embed_on_circle(tour, matrix), k, rng);
        default: return random_slices(tour.size(), k, rng);
    }
}

}  // namespace qls
