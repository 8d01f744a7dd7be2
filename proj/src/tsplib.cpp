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

#include "qls/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace qls {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string with_line(std::size_t line, const std::string& msg) {
    return "line " + std::to_string(line) + ": " + msg;
}

std::optional<Metric> metric_from(std::string_view s) {
    if (s == "EUC_2D") return Metric::Euc2d;
    if (s == "CEIL_2D") return Metric::Ceil2d;
    if (s == "GEO") return Metric::Geo;
    if (s == "ATT") return Metric::Att;
    return std::nullopt;
}

std::optional<double> to_double(std::string_view tok) {
    // std::from_chars for double is not available everywhere yet.
    std::string buf(tok);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

// TSPLIB's nint.
double nint(double x) { return static_cast<double>(static_cast<long long>(x + 0.5)); }

// Degrees.minutes encoding used by GEO instances, converted to radians with
// the truncated pi from the TSPLIB reference.
double geo_radians(double v) {
    constexpr double kPi = 3.141592;
    const double deg = std::trunc(v);
    const double min = v - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

double geo_distance(Point a, Point b) {
    constexpr double kEarthRadius = 6378.388;
    const double lat_a = geo_radians(a.x);
    const double lon_a = geo_radians(a.y);
    const double lat_b = geo_radians(b.x);
    const double lon_b = geo_radians(b.y);
    const double q1 = std::cos(lon_a - lon_b);
    const double q2 = std::cos(lat_a - lat_b);
    const double q3 = std::cos(lat_a + lat_b);
    return static_cast<double>(static_cast<long long>(
        kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0));
}

double euclidean(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

double att_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
    const double t = nint(r);
    return t < r ? t + 1.0 : t;
}

}  // namespace

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::Euc2d: return "EUC_2D";
        case Metric::Ceil2d: return "CEIL_2D";
        case Metric::Geo: return "GEO";
        case Metric::Att: return "ATT";
    }
    return "?";
}

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? with_line(line, what) : what), kind_(kind), line_(line) {}

Instance parse_instance(std::string_view content) {
    using Kind = ParseError::Kind;

    Instance inst;
    std::optional<std::size_t> dimension;
    std::optional<Metric> metric;
    bool have_name = false;
    bool in_coords = false;
    std::size_t coord_section_line = 0;
    std::vector<std::pair<long long, Point>> nodes;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const auto nl = content.find('\n', pos);
        const auto raw = content.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                          : nl - pos);
        pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
        ++lineno;

        const auto line = trim(raw);
        if (line.empty()) continue;
        if (line == "EOF") break;

        if (in_coords) {
            const auto toks = split_ws(line);
            // A keyword after the coordinates ends the section.
            if (!toks.empty() && !toks[0].empty() &&
                std::isalpha(static_cast<unsigned char>(toks[0][0]))) {
                in_coords = false;
            } else {
                if (toks.size() != 3) {
                    throw ParseError(Kind::BadCoordinate, lineno,
                                     "expected '<id> <x> <y>' in NODE_COORD_SECTION");
                }
                long long id = 0;
                const auto [p, ec] = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), id);
                const auto x = to_double(toks[1]);
                const auto y = to_double(toks[2]);
                if (ec != std::errc{} || p != toks[0].data() + toks[0].size() || !x || !y) {
                    throw ParseError(Kind::BadCoordinate, lineno, "unparsable coordinate line");
                }
                nodes.push_back({id, Point{*x, *y}});
                continue;
            }
        }

        if (line == "NODE_COORD_SECTION") {
            in_coords = true;
            coord_section_line = lineno;
            continue;
        }
        if (line.ends_with("_SECTION")) {
            throw ParseError(Kind::MalformedHeader, lineno,
                             "unsupported section '" + std::string(line) + "'");
        }

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(Kind::MalformedHeader, lineno, "expected 'KEY : VALUE'");
        }
        const auto key = trim(line.substr(0, colon));
        const auto value = trim(line.substr(colon + 1));

        if (key == "NAME") {
            inst.name = std::string(value);
            have_name = true;
        } else if (key == "DIMENSION") {
            std::size_t d = 0;
            const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), d);
            if (ec != std::errc{} || p != value.data() + value.size()) {
                throw ParseError(Kind::MalformedHeader, lineno, "DIMENSION is not an integer");
            }
            if (d < 3) {
                throw ParseError(Kind::MalformedHeader, lineno, "DIMENSION must be at least 3");
            }
            dimension = d;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            metric = metric_from(value);
            if (!metric) {
                throw ParseError(Kind::UnsupportedWeightType, lineno,
                                 "unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "'");
            }
        } else if (key == "TYPE") {
            if (value != "TSP") {
                throw ParseError(Kind::MalformedHeader, lineno,
                                 "unsupported TYPE '" + std::string(value) + "'");
            }
        }
        // COMMENT, DISPLAY_DATA_TYPE, NODE_COORD_TYPE and friends are ignored.
    }

    if (!have_name) throw ParseError(Kind::MissingKeyword, 0, "missing NAME");
    if (!dimension) throw ParseError(Kind::MissingKeyword, 0, "missing DIMENSION");
    if (!metric) throw ParseError(Kind::MissingKeyword, 0, "missing EDGE_WEIGHT_TYPE");
    if (coord_section_line == 0) throw ParseError(Kind::MissingKeyword, 0, "missing NODE_COORD_SECTION");

    if (nodes.size() != *dimension) {
        throw ParseError(Kind::CoordinateCountMismatch, coord_section_line,
                         "DIMENSION is " + std::to_string(*dimension) + " but " +
                             std::to_string(nodes.size()) + " coordinates were given");
    }

    // Node ids are usually 1..n in order; normalize whatever numbering was
    // used to 0-based positions sorted by id.
    std::stable_sort(nodes.begin(), nodes.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i].first == nodes[i - 1].first) {
            throw ParseError(Kind::BadCoordinate, coord_section_line,
                             "duplicate node id " + std::to_string(nodes[i].first));
        }
    }

    inst.dimension = *dimension;
    inst.metric = *metric;
    inst.coords.reserve(nodes.size());
    for (const auto& [id, pt] : nodes) inst.coords.push_back(pt);
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

double distance(const Instance& instance, City a, City b) {
    if (a >= instance.dimension || b >= instance.dimension) {
        throw std::out_of_range("city index out of range");
    }
    if (a == b) return 0.0;
    const Point pa = instance.coords[a];
    const Point pb = instance.coords[b];
    switch (instance.metric) {
        case Metric::Euc2d: return nint(euclidean(pa, pb));
        case Metric::Ceil2d: return std::ceil(euclidean(pa, pb));
        case Metric::Geo: return geo_distance(pa, pb);
        case Metric::Att: return att_distance(pa, pb);
    }
    return 0.0;
}

DistanceMatrix build_distance_matrix(const Instance& instance) {
    DistanceMatrix m(instance.dimension);
    for (City a = 0; a < instance.dimension; ++a) {
        for (City b = a + 1; b < instance.dimension; ++b) m.set(a, b, distance(instance, a, b));
    }
    return m;
}

}  // namespace qls
