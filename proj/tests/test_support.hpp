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

#include <algorithm>
#include <filesystem>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "qls/random.hpp"
#include "qls/tour.hpp"
#include "qls/tsplib.hpp"

namespace qls::testing {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(QLS_TSP_DATA_DIR) / (name + ".tsp");
}

// Published optimal tours, 1-based as distributed with TSPLIB.
inline const std::vector<City> kUlysses16Optimal{1, 14, 13, 12, 7, 6, 15, 5, 11, 9, 10, 16, 3, 2, 4, 8};
inline const std::vector<City> kAtt48Optimal{1,  8,  38, 31, 44, 18, 7,  28, 6,  37, 19, 27, 17, 43, 30, 36,
                                             46, 33, 20, 47, 21, 32, 39, 48, 5,  42, 24, 10, 45, 35, 4,  26,
                                             2,  29, 34, 41, 16, 22, 3,  23, 14, 25, 13, 11, 12, 15, 40, 9};
inline const std::vector<City> kDjibouti38Optimal{1,  2,  4,  3,  5,  6,  7,  8,  9,  12, 11, 19, 18,
                                                  17, 16, 13, 15, 20, 23, 26, 25, 22, 24, 28, 27, 31,
                                                  36, 34, 33, 38, 37, 35, 32, 30, 29, 21, 14, 10};

inline std::vector<City> zero_based(std::vector<City> order) {
    for (auto& c : order) --c;
    return order;
}

inline void shuffle(std::vector<City>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

inline std::vector<City> random_order(std::size_t n, Rng& rng) {
    std::vector<City> order(n);
    std::iota(order.begin(), order.end(), City{0});
    shuffle(order, rng);
    return order;
}

// Integer coordinates in [0, 1000), EUC_2D.
inline Instance random_instance(std::size_t n, Rng& rng) {
    Instance inst;
    inst.name = "random" + std::to_string(n);
    inst.dimension = n;
    inst.metric = Metric::Euc2d;
    for (std::size_t i = 0; i < n; ++i) {
        inst.coords.push_back({static_cast<double>(uniform_int(rng, 0, 999)),
                               static_cast<double>(uniform_int(rng, 0, 999))});
    }
    return inst;
}

// Shortest closed tour by fixing city 0 and permuting the rest.
inline double brute_force_optimum(const DistanceMatrix& matrix) {
    std::vector<City> rest(matrix.size() - 1);
    std::iota(rest.begin(), rest.end(), City{1});
    double best = std::numeric_limits<double>::infinity();
    std::vector<City> order;
    do {
        order.assign(1, 0);
        order.insert(order.end(), rest.begin(), rest.end());
        best = std::min(best, tour_length(order, matrix, true));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

}  // namespace qls::testing
