// Test-only oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kcov/complex.hpp"
#include "kcov/geometry.hpp"

namespace oracle {

/// P[Poisson(m) >= k] in long double, each term evaluated in the log domain
/// (a different route than the library's double-precision term recurrence).
inline long double poisson_tail_ld(long double m, int k) {
    if (m <= 0.0L) return 0.0L;
    long double sum = 0.0L;
    const long double logm = std::log(m);
    for (int i = k;; ++i) {
        const long double term = std::exp(-m + i * logm - std::lgamma(static_cast<long double>(i) + 1.0L));
        sum += term;
        if (i > m && term < sum * 1e-25L) break;
        if (i > k + 200000) break;
    }
    return sum;
}

/// All-pairs / all-triples complex construction with the same predicates as
/// the library but none of its neighbor-grid machinery.
inline kcov::SimplicialComplex brute_complex(const std::vector<kcov::Node>& nodes,
                                             kcov::Flavor flavor, double scale) {
    std::vector<kcov::Node> sorted(nodes);
    std::sort(sorted.begin(), sorted.end(),
              [](const kcov::Node& a, const kcov::Node& b) { return a.id < b.id; });
    const double threshold = flavor == kcov::Flavor::Rips ? scale : 2.0 * scale;
    const bool strict = flavor == kcov::Flavor::Rips;
    auto edge_ok = [&](const kcov::Node& a, const kcov::Node& b) {
        const double d2 = kcov::dist_sq(a.pos, b.pos);
        return strict ? d2 < threshold * threshold : d2 <= threshold * threshold;
    };
    kcov::SimplicialComplex S;
    S.flavor = flavor;
    S.scale = scale;
    for (const auto& n : sorted) S.vertices.push_back(n.id);
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (edge_ok(sorted[i], sorted[j])) S.edges.push_back({sorted[i].id, sorted[j].id});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (!edge_ok(sorted[i], sorted[j]) || !edge_ok(sorted[i], sorted[k]) ||
                    !edge_ok(sorted[j], sorted[k]))
                    continue;
                if (flavor == kcov::Flavor::Cech &&
                    kcov::miniball3_radius(sorted[i].pos, sorted[j].pos, sorted[k].pos) > scale)
                    continue;
                S.triangles.push_back({sorted[i].id, sorted[j].id, sorted[k].id});
            }
    return S;
}

/// Dense grid search over the bounding box: do the three closed r-disks
/// share a point? Resolution `pitch`; approximate, so callers must keep the
/// query radius away from the critical value by more than the pitch.
inline bool disks_share_point_grid(const kcov::Point2& a, const kcov::Point2& b,
                                   const kcov::Point2& c, double r, double pitch) {
    const double lo_x = std::min({a.x, b.x, c.x}) - r;
    const double hi_x = std::max({a.x, b.x, c.x}) + r;
    const double lo_y = std::min({a.y, b.y, c.y}) - r;
    const double hi_y = std::max({a.y, b.y, c.y}) + r;
    const double r2 = r * r;
    for (double x = lo_x; x <= hi_x; x += pitch)
        for (double y = lo_y; y <= hi_y; y += pitch) {
            const kcov::Point2 p{x, y};
            if (kcov::dist_sq(p, a) <= r2 && kcov::dist_sq(p, b) <= r2 && kcov::dist_sq(p, c) <= r2)
                return true;
        }
    return false;
}

/// Uniform random node set on [0, side]^2 for property tests.
inline std::vector<kcov::Node> random_nodes(std::mt19937& rng, int count, double side) {
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<kcov::Node> out;
    for (int i = 0; i < count; ++i)
        out.push_back(kcov::Node{i, kcov::Point2{u(rng), u(rng)}, kcov::NodeRole::Interior});
    return out;
}

}  // namespace oracle
