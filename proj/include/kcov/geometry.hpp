// Planar point-process sampling, fence generation, and the disk predicates
// used by complex construction and the coverage certificate.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcov {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dist_sq(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double dist(const Point2& a, const Point2& b) {
    return std::sqrt(dist_sq(a, b));
}

enum class NodeRole { Interior, Fence };

struct Node {
    int id = 0;
    Point2 pos;
    NodeRole role = NodeRole::Interior;
};

/// A network snapshot: nodes with roles, a common coverage radius and the
/// side length of the square domain [0,L]^2. Interior ids come first and are
/// contiguous from 0; fence ids follow.
struct NodeSet {
    std::vector<Node> nodes;
    double radius = 0.0;       // common coverage radius; 0 until attached
    double domain_side = 0.0;
    std::optional<std::uint64_t> seed;
    std::string generator;     // RNG algorithm identifier, empty for hand-built sets

    std::vector<int> interior_ids() const {
        std::vector<int> out;
        for (const Node& n : nodes)
            if (n.role == NodeRole::Interior) out.push_back(n.id);
        return out;
    }
    std::vector<int> fence_ids() const {
        std::vector<int> out;
        for (const Node& n : nodes)
            if (n.role == NodeRole::Fence) out.push_back(n.id);
        return out;
    }
};

struct PoissonConfig {
    double intensity = 0.0;        // lambda, points per unit area
    double domain_side = 0.0;      // L
    std::uint64_t seed = 0;
    double hardcore_distance = 0.0;  // 0 disables thinning
};

/// Identifier recorded in NodeSet metadata. Node sets are reproducible across
/// implementations only when they share this exact generator.
inline constexpr const char* kGeneratorId = "mt19937_64/u53/knuth-poisson/v1";

/// Deterministic random stream. The uniform and Poisson draws are implemented
/// here on top of std::mt19937_64 (whose output sequence the standard pins
/// down bit-exactly) instead of the <random> distribution classes, whose
/// algorithms are implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Poisson draw via Knuth's product method; requires mean < 700 so that
    /// exp(-mean) stays normal in double precision.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (!(mean < 700.0))
            throw std::invalid_argument("RandomStream::poisson: mean too large for product method");
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

private:
    std::mt19937_64 eng_;
};

namespace detail {

inline void check_poisson_config(const PoissonConfig& cfg) {
    if (!(cfg.intensity > 0.0)) throw std::invalid_argument("PoissonConfig: intensity must be > 0");
    if (!(cfg.domain_side > 0.0)) throw std::invalid_argument("PoissonConfig: domain_side must be > 0");
}

inline NodeSet make_interior_set(std::vector<Point2> pts, const PoissonConfig& cfg) {
    NodeSet ns;
    ns.domain_side = cfg.domain_side;
    ns.seed = cfg.seed;
    ns.generator = kGeneratorId;
    ns.nodes.reserve(pts.size());
    int id = 0;
    for (const Point2& p : pts) ns.nodes.push_back(Node{id++, p, NodeRole::Interior});
    return ns;
}

}  // namespace detail

/// Homogeneous Poisson sample on [0,L]^2: the count is Poisson(lambda*L^2),
/// positions i.i.d. uniform. Radius is left unset (0) until attached.
inline NodeSet sample_poisson(const PoissonConfig& cfg) {
    detail::check_poisson_config(cfg);
    RandomStream rng(cfg.seed);
    const double L = cfg.domain_side;
    const int count = rng.poisson(cfg.intensity * L * L);
    std::vector<Point2> pts(static_cast<std::size_t>(count));
    for (Point2& p : pts) {
        p.x = rng.uniform01() * L;
        p.y = rng.uniform01() * L;
    }
    return detail::make_interior_set(std::move(pts), cfg);
}

/// Matern type-II hard core: sample Poisson, give every point an independent
/// uniform mark, then delete each point that has a neighbor within
/// hardcore_distance carrying a smaller mark. Survivors are pairwise farther
/// than hardcore_distance apart.
inline NodeSet sample_hardcore(const PoissonConfig& cfg) {
    detail::check_poisson_config(cfg);
    if (!(cfg.hardcore_distance > 0.0))
        throw std::invalid_argument("sample_hardcore: hardcore_distance must be > 0");
    RandomStream rng(cfg.seed);
    const double L = cfg.domain_side;
    const int count = rng.poisson(cfg.intensity * L * L);
    std::vector<Point2> pts(static_cast<std::size_t>(count));
    for (Point2& p : pts) {
        p.x = rng.uniform01() * L;
        p.y = rng.uniform01() * L;
    }
    std::vector<double> marks(pts.size());
    for (double& m : marks) m = rng.uniform01();

    const double h2 = cfg.hardcore_distance * cfg.hardcore_distance;
    std::vector<Point2> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool survives = true;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i || dist_sq(pts[i], pts[j]) > h2) continue;
            // ties in marks (probability zero) break by index
            if (marks[j] < marks[i] || (marks[j] == marks[i] && j < i)) {
                survives = false;
                break;
            }
        }
        if (survives) kept.push_back(pts[i]);
    }
    return detail::make_interior_set(std::move(kept), cfg);
}

/// Fixed-count placement: exactly `count` uniform points, or with
/// hardcore_distance > 0 a rejection scheme that may return fewer when the
/// attempt budget runs out. Survivor pairs are >= hardcore_distance apart.
inline NodeSet sample_fixed_count(int count, double domain_side, std::uint64_t seed,
                                  double hardcore_distance = 0.0) {
    if (count < 0) throw std::invalid_argument("sample_fixed_count: count must be >= 0");
    if (!(domain_side > 0.0)) throw std::invalid_argument("sample_fixed_count: domain_side must be > 0");
    RandomStream rng(seed);
    const double L = domain_side;
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(count));
    if (hardcore_distance <= 0.0) {
        for (int i = 0; i < count; ++i) pts.push_back(Point2{rng.uniform01() * L, rng.uniform01() * L});
    } else {
        const double h2 = hardcore_distance * hardcore_distance;
        long attempts = 0;
        const long budget = std::max(1000L, 1000L * count);
        while (static_cast<int>(pts.size()) < count && attempts < budget) {
            ++attempts;
            Point2 p{rng.uniform01() * L, rng.uniform01() * L};
            bool ok = true;
            for (const Point2& q : pts)
                if (dist_sq(p, q) < h2) { ok = false; break; }
            if (ok) pts.push_back(p);
        }
    }
    PoissonConfig meta;
    meta.intensity = 1.0;  // unused by make_interior_set beyond validation
    meta.domain_side = domain_side;
    meta.seed = seed;
    meta.hardcore_distance = hardcore_distance;
    return detail::make_interior_set(std::move(pts), meta);
}

/// Fence nodes on the boundary of [0,L]^2: the four corners plus uniform
/// subdivisions so consecutive nodes along a side are at most `spacing`
/// apart. Returned sorted by (x, y) with ids 0..m-1.
inline std::vector<Node> make_fence(double domain_side, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("make_fence: spacing must be > 0");
    if (!(domain_side > 0.0)) throw std::invalid_argument("make_fence: domain_side must be > 0");
    const double L = domain_side;
    const int segments = std::max(1, static_cast<int>(std::ceil(L / spacing - 1e-12)));
    std::vector<Point2> pts;
    for (int i = 0; i <= segments; ++i) {
        const double t = L * static_cast<double>(i) / static_cast<double>(segments);
        pts.push_back(Point2{t, 0.0});
        pts.push_back(Point2{t, L});
        pts.push_back(Point2{0.0, t});
        pts.push_back(Point2{L, t});
    }
    std::sort(pts.begin(), pts.end(),
              [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    std::vector<Node> out;
    out.reserve(pts.size());
    int id = 0;
    for (const Point2& p : pts) out.push_back(Node{id++, p, NodeRole::Fence});
    return out;
}

/// Append a fence to a set of interior nodes; fence ids continue after the
/// interior ids.
inline NodeSet attach_fence(NodeSet ns, double spacing) {
    for (const Node& n : ns.nodes)
        if (n.role == NodeRole::Fence)
            throw std::invalid_argument("attach_fence: node set already has fence nodes");
    const int base = static_cast<int>(ns.nodes.size());
    for (Node f : make_fence(ns.domain_side, spacing)) {
        f.id += base;
        ns.nodes.push_back(f);
    }
    return ns;
}

/// Closed-disk coverage: p lies within distance r of center.
inline bool covers(const Point2& center, double r, const Point2& p) {
    return dist_sq(center, p) <= r * r;
}

/// Radius of the smallest circle enclosing three points: half the longest
/// side when that diametral circle already contains the third point, else
/// the circumradius. Three closed disks of common radius r centered at the
/// points share a point iff this radius is <= r.
inline double miniball3_radius(const Point2& a, const Point2& b, const Point2& c) {
    const Point2* p[3] = {&a, &b, &c};
    // farthest pair and the remaining point
    int fi = 0, fj = 1, fk = 2;
    double best = dist_sq(a, b);
    if (dist_sq(a, c) > best) { best = dist_sq(a, c); fi = 0; fj = 2; fk = 1; }
    if (dist_sq(b, c) > best) { best = dist_sq(b, c); fi = 1; fj = 2; fk = 0; }
    const Point2 mid{(p[fi]->x + p[fj]->x) / 2.0, (p[fi]->y + p[fj]->y) / 2.0};
    const double half = std::sqrt(best) / 2.0;
    if (dist(mid, *p[fk]) <= half) return half;
    // acute triangle: circumradius = |AB||BC||CA| / (4 * area)
    const double la = dist(a, b), lb = dist(b, c), lc = dist(c, a);
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    const double area2 = std::abs(cross);  // twice the triangle area
    return la * lb * lc / (2.0 * area2);
}

}  // namespace kcov
