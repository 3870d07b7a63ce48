// Vietoris-Rips and Cech abstract simplicial complexes truncated at
// dimension 2, plus vertex deletion with cofaces.
#pragma once

#include <array>
#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kcov/geometry.hpp"

namespace kcov {

enum class Flavor { Rips, Cech };

inline const char* flavor_name(Flavor f) { return f == Flavor::Rips ? "rips" : "cech"; }

/// Vertices, edges and triangles over node ids, each list sorted
/// lexicographically with simplex vertices in increasing id order.
/// `scale` is epsilon for Rips and the disk radius r for Cech.
struct SimplicialComplex {
    Flavor flavor = Flavor::Rips;
    double scale = 0.0;
    std::vector<int> vertices;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangles;

    bool has_vertex(int v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }
};

namespace detail {

// Uniform-grid neighbor search with cell size equal to the edge threshold,
// so candidate pairs are confined to the 3x3 cell neighborhood.
class NeighborGrid {
public:
    NeighborGrid(std::span<const Node> nodes, double cell) : nodes_(nodes), cell_(cell) {
        buckets_.reserve(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            buckets_[key(nodes[i].pos)].push_back(i);
    }

    // calls fn(i, j) for every pair with i < j whose cells are adjacent
    template <typename Fn>
    void for_candidate_pairs(Fn&& fn) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto [cx, cy] = cell_of(nodes_[i].pos);
            for (std::int64_t dx = -1; dx <= 1; ++dx) {
                for (std::int64_t dy = -1; dy <= 1; ++dy) {
                    auto it = buckets_.find(pack(cx + dx, cy + dy));
                    if (it == buckets_.end()) continue;
                    for (std::size_t j : it->second)
                        if (j > i) fn(i, j);
                }
            }
        }
    }

private:
    std::pair<std::int64_t, std::int64_t> cell_of(const Point2& p) const {
        return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
                static_cast<std::int64_t>(std::floor(p.y / cell_))};
    }
    static std::uint64_t pack(std::int64_t cx, std::int64_t cy) {
        return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint64_t>(cy & 0xffffffff);
    }
    std::uint64_t key(const Point2& p) const {
        const auto [cx, cy] = cell_of(p);
        return pack(cx, cy);
    }

    std::span<const Node> nodes_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

/// Shared builder. Nodes must be sorted by id (ascending). Edge threshold is
/// strict `< epsilon` for Rips and closed `<= 2r` for Cech; triangles are the
/// 3-cliques of the edge graph, with Cech additionally requiring the smallest
/// enclosing circle of the triple to fit in a radius-r disk.
inline SimplicialComplex build_complex(std::span<const Node> nodes, Flavor flavor, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("build_complex: scale must be > 0");
    if (nodes.empty()) throw std::invalid_argument("build_complex: node set is empty");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i - 1].id >= nodes[i].id)
            throw std::invalid_argument("build_complex: nodes must be sorted by ascending id");

    const double threshold = flavor == Flavor::Rips ? scale : 2.0 * scale;
    const double thr_sq = threshold * threshold;
    const bool strict = flavor == Flavor::Rips;

    SimplicialComplex S;
    S.flavor = flavor;
    S.scale = scale;
    S.vertices.reserve(nodes.size());
    for (const Node& n : nodes) S.vertices.push_back(n.id);

    // edges via the grid; indices into `nodes` are in id order already
    std::vector<std::vector<int>> adj(nodes.size());  // neighbor indices, each list ascending
    NeighborGrid grid(nodes, threshold);
    grid.for_candidate_pairs([&](std::size_t i, std::size_t j) {
        const double d2 = dist_sq(nodes[i].pos, nodes[j].pos);
        if (strict ? d2 < thr_sq : d2 <= thr_sq) {
            adj[i].push_back(static_cast<int>(j));
            adj[j].push_back(static_cast<int>(i));
        }
    });
    for (auto& a : adj) std::sort(a.begin(), a.end());

    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int j : adj[i])
            if (static_cast<std::size_t>(j) > i)
                S.edges.push_back({nodes[i].id, nodes[j].id});
    std::sort(S.edges.begin(), S.edges.end());

    // triangles: common neighbors k > j of each edge (i, j)
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (int j : adj[i]) {
            if (static_cast<std::size_t>(j) <= i) continue;
            const auto& ai = adj[i];
            const auto& aj = adj[static_cast<std::size_t>(j)];
            auto it_i = std::upper_bound(ai.begin(), ai.end(), j);
            auto it_j = std::upper_bound(aj.begin(), aj.end(), j);
            while (it_i != ai.end() && it_j != aj.end()) {
                if (*it_i < *it_j) ++it_i;
                else if (*it_j < *it_i) ++it_j;
                else {
                    const std::size_t k = static_cast<std::size_t>(*it_i);
                    if (flavor == Flavor::Rips ||
                        miniball3_radius(nodes[i].pos, nodes[static_cast<std::size_t>(j)].pos,
                                         nodes[k].pos) <= scale)
                        S.triangles.push_back({nodes[i].id, nodes[static_cast<std::size_t>(j)].id,
                                               nodes[k].id});
                    ++it_i;
                    ++it_j;
                }
            }
        }
    }
    std::sort(S.triangles.begin(), S.triangles.end());
    return S;
}

}  // namespace detail

/// Vietoris-Rips complex: edge {i,j} iff distance < epsilon (strict),
/// triangles are the 3-cliques of the edge graph.
inline SimplicialComplex build_rips(const NodeSet& ns, double epsilon) {
    return detail::build_complex(std::span<const Node>(ns.nodes), Flavor::Rips, epsilon);
}

/// Cech complex of radius r: edge {i,j} iff the two closed r-disks meet
/// (distance <= 2r), triangle {i,j,k} iff the three disks share a point
/// (smallest enclosing circle radius <= r).
inline SimplicialComplex build_cech(const NodeSet& ns, double r) {
    return detail::build_complex(std::span<const Node>(ns.nodes), Flavor::Cech, r);
}

/// Remove vertex v together with every edge and triangle containing it.
inline SimplicialComplex delete_vertex(const SimplicialComplex& S, int v) {
    if (!S.has_vertex(v)) throw std::invalid_argument("delete_vertex: vertex not in complex");
    SimplicialComplex out;
    out.flavor = S.flavor;
    out.scale = S.scale;
    out.vertices.reserve(S.vertices.size() - 1);
    for (int u : S.vertices)
        if (u != v) out.vertices.push_back(u);
    out.edges.reserve(S.edges.size());
    for (const auto& e : S.edges)
        if (e[0] != v && e[1] != v) out.edges.push_back(e);
    out.triangles.reserve(S.triangles.size());
    for (const auto& t : S.triangles)
        if (t[0] != v && t[1] != v && t[2] != v) out.triangles.push_back(t);
    return out;
}

/// True iff every simplex of A is a simplex of B.
inline bool is_subcomplex(const SimplicialComplex& A, const SimplicialComplex& B) {
    return std::includes(B.vertices.begin(), B.vertices.end(), A.vertices.begin(), A.vertices.end()) &&
           std::includes(B.edges.begin(), B.edges.end(), A.edges.begin(), A.edges.end()) &&
           std::includes(B.triangles.begin(), B.triangles.end(), A.triangles.begin(), A.triangles.end());
}

/// Face-closure check: every edge endpoint is a vertex, every triangle edge
/// is present, simplices are sorted and duplicate-free.
inline bool is_valid_complex(const SimplicialComplex& S) {
    if (!std::is_sorted(S.vertices.begin(), S.vertices.end()) ||
        std::adjacent_find(S.vertices.begin(), S.vertices.end()) != S.vertices.end())
        return false;
    if (!std::is_sorted(S.edges.begin(), S.edges.end()) ||
        std::adjacent_find(S.edges.begin(), S.edges.end()) != S.edges.end())
        return false;
    if (!std::is_sorted(S.triangles.begin(), S.triangles.end()) ||
        std::adjacent_find(S.triangles.begin(), S.triangles.end()) != S.triangles.end())
        return false;
    for (const auto& e : S.edges) {
        if (e[0] >= e[1]) return false;
        if (!S.has_vertex(e[0]) || !S.has_vertex(e[1])) return false;
    }
    auto has_edge = [&](int a, int b) {
        return std::binary_search(S.edges.begin(), S.edges.end(), std::array<int, 2>{a, b});
    };
    for (const auto& t : S.triangles) {
        if (t[0] >= t[1] || t[1] >= t[2]) return false;
        if (!has_edge(t[0], t[1]) || !has_edge(t[0], t[2]) || !has_edge(t[1], t[2])) return false;
    }
    return true;
}

}  // namespace kcov
