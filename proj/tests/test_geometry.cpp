#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "kcov/geometry.hpp"
#include "kcov/serialize.hpp"
#include "oracles.hpp"

using namespace kcov;

TEST_CASE("covers uses the closed disk") {
    CHECK(covers(Point2{0, 0}, 1.0, Point2{1, 0}));
    CHECK_FALSE(covers(Point2{0, 0}, 1.0, Point2{1.0001, 0}));
    CHECK(covers(Point2{3, 4}, 5.0, Point2{0, 0}));  // distance exactly 5
}

TEST_CASE("miniball3_radius on the worked examples") {
    CHECK(miniball3_radius(Point2{0, 0}, Point2{2, 0}, Point2{1, 1}) == doctest::Approx(1.0));
    CHECK(miniball3_radius(Point2{0, 0}, Point2{2, 0}, Point2{1, 0.1}) == doctest::Approx(1.0));
    CHECK(miniball3_radius(Point2{0, 0}, Point2{2, 0}, Point2{1, std::sqrt(3.0)}) ==
          doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("miniball3_radius degenerate triples") {
    // collinear: diametral circle of the farthest pair
    CHECK(miniball3_radius(Point2{0, 0}, Point2{1, 0}, Point2{3, 0}) == doctest::Approx(1.5));
    // coincident points
    CHECK(miniball3_radius(Point2{2, 2}, Point2{2, 2}, Point2{2, 2}) == doctest::Approx(0.0));
    CHECK(miniball3_radius(Point2{0, 0}, Point2{0, 0}, Point2{2, 0}) == doctest::Approx(1.0));
}

TEST_CASE("miniball3_radius lower bound: half the maximum pairwise distance") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        const double half_max = std::sqrt(std::max({dist_sq(a, b), dist_sq(a, c), dist_sq(b, c)})) / 2.0;
        CHECK(miniball3_radius(a, b, c) >= half_max - 1e-12);
    }
}

TEST_CASE("three equal disks share a point iff miniball radius fits (grid oracle)") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int trial = 0; trial < 60; ++trial) {
        const Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        const double mb = miniball3_radius(a, b, c);
        const double margin = 0.08, pitch = 0.02;
        CHECK(oracle::disks_share_point_grid(a, b, c, mb + margin, pitch));
        if (mb > margin)
            CHECK_FALSE(oracle::disks_share_point_grid(a, b, c, mb - margin, pitch));
    }
}

TEST_CASE("make_fence node counts") {
    CHECK(make_fence(10.0, 2.5).size() == 16);
    CHECK(make_fence(10.0, 10.0).size() == 4);
}

TEST_CASE("make_fence nodes lie on the boundary, within spacing of a neighbor") {
    const double L = 10.0, spacing = 2.5;
    const auto fence = make_fence(L, spacing);
    for (const Node& n : fence) {
        const bool on_x = n.pos.x == 0.0 || n.pos.x == L;
        const bool on_y = n.pos.y == 0.0 || n.pos.y == L;
        CHECK((on_x || on_y));
        // some other fence node within the spacing
        double closest = 1e30;
        for (const Node& m : fence)
            if (m.id != n.id) closest = std::min(closest, dist(n.pos, m.pos));
        CHECK(closest <= spacing + 1e-12);
    }
}

TEST_CASE("make_fence is invariant under axis swap") {
    for (double spacing : {1.7, 2.5, 3.0, 9.0}) {
        std::set<std::pair<double, double>> pts, swapped;
        for (const Node& n : make_fence(10.0, spacing)) {
            pts.insert({n.pos.x, n.pos.y});
            swapped.insert({n.pos.y, n.pos.x});
        }
        CHECK(pts == swapped);
    }
}

TEST_CASE("make_fence rejects nonpositive spacing") {
    CHECK_THROWS_AS(make_fence(10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_fence(10.0, -1.0), std::invalid_argument);
}

TEST_CASE("sample_poisson is deterministic per seed, byte-for-byte") {
    PoissonConfig cfg;
    cfg.intensity = 0.25;
    cfg.domain_side = 10.0;
    cfg.seed = 12345;
    const NodeSet a = sample_poisson(cfg);
    const NodeSet b = sample_poisson(cfg);
    CHECK(write_node_set(a) == write_node_set(b));
    cfg.seed = 12346;
    CHECK(write_node_set(sample_poisson(cfg)) != write_node_set(a));
}

TEST_CASE("sample_poisson count matches the Poisson mean") {
    PoissonConfig cfg;
    cfg.intensity = 0.25;  // mean count 25 on the side-10 square
    cfg.domain_side = 10.0;
    double total = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        cfg.seed = s;
        total += static_cast<double>(sample_poisson(cfg).nodes.size());
    }
    const double mean = total / 1000.0;
    CHECK(mean > 23.5);
    CHECK(mean < 26.5);
}

TEST_CASE("sample_poisson empty-set probability matches the pmf at zero") {
    PoissonConfig cfg;
    cfg.intensity = 0.05;  // mean count 5
    cfg.domain_side = 10.0;
    int empties = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        cfg.seed = 1000000 + s;
        if (sample_poisson(cfg).nodes.empty()) ++empties;
    }
    const double p = empties / 10000.0;
    CHECK(std::abs(p - std::exp(-5.0)) < 0.003);
}

TEST_CASE("sample_poisson positions are uniform (quadrant balance)") {
    PoissonConfig cfg;
    cfg.intensity = 0.5;
    cfg.domain_side = 10.0;
    int low_half = 0, total = 0;
    for (std::uint64_t s = 0; s < 400; ++s) {
        cfg.seed = 555 + s;
        for (const Node& n : sample_poisson(cfg).nodes) {
            ++total;
            if (n.pos.x < 5.0) ++low_half;
        }
    }
    const double frac = static_cast<double>(low_half) / total;
    CHECK(std::abs(frac - 0.5) < 0.02);
}

TEST_CASE("sample_hardcore enforces the exclusion distance") {
    PoissonConfig cfg;
    cfg.intensity = 0.4;
    cfg.domain_side = 10.0;
    cfg.hardcore_distance = 1.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        cfg.seed = s;
        const NodeSet ns = sample_hardcore(cfg);
        for (std::size_t i = 0; i < ns.nodes.size(); ++i)
            for (std::size_t j = i + 1; j < ns.nodes.size(); ++j)
                CHECK(dist(ns.nodes[i].pos, ns.nodes[j].pos) >= 1.0);
        // thinning never adds points
        PoissonConfig plain = cfg;
        plain.hardcore_distance = 0.0;
        CHECK(ns.nodes.size() <= sample_poisson(plain).nodes.size());
    }
}

TEST_CASE("sample_hardcore requires a positive exclusion distance") {
    PoissonConfig cfg;
    cfg.intensity = 0.4;
    cfg.domain_side = 10.0;
    cfg.hardcore_distance = 0.0;
    CHECK_THROWS_AS(sample_hardcore(cfg), std::invalid_argument);
}

TEST_CASE("sample_fixed_count: exact count, and the hard-core variant stays apart") {
    const NodeSet plain = sample_fixed_count(40, 10.0, 1);
    CHECK(plain.nodes.size() == 40);
    const NodeSet hc = sample_fixed_count(40, 10.0, 1, 1.0);
    CHECK(hc.nodes.size() <= 40);
    for (std::size_t i = 0; i < hc.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < hc.nodes.size(); ++j)
            CHECK(dist(hc.nodes[i].pos, hc.nodes[j].pos) >= 1.0);
}

TEST_CASE("attach_fence appends fence ids after interior ids") {
    PoissonConfig cfg;
    cfg.intensity = 0.2;
    cfg.domain_side = 10.0;
    cfg.seed = 3;
    NodeSet ns = sample_poisson(cfg);
    const std::size_t interior = ns.nodes.size();
    ns.radius = 2.5;
    ns = attach_fence(std::move(ns), 2.5);
    CHECK(ns.nodes.size() == interior + 16);
    CHECK(ns.interior_ids().size() == interior);
    CHECK(ns.fence_ids().size() == 16);
    for (int id : ns.fence_ids()) CHECK(id >= static_cast<int>(interior));
    CHECK_THROWS_AS(attach_fence(std::move(ns), 2.5), std::invalid_argument);
}
