// Greedy reduction of a connected, hole-free complex to a locally minimal
// subcomplex that still has beta0 = 1 and beta1 = 0. Fence vertices are
// never candidates for removal.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "kcov/homology.hpp"

namespace kcov {

struct ReductionOutcome {
    std::vector<int> kept;       // vertex ids surviving the reduction, fence included
    std::vector<int> discarded;  // interior vertex ids removed
    int passes = 0;              // full sweeps performed, final all-reject sweep included
};

namespace detail {

inline bool connected_and_holefree(const SimplicialComplex& S) {
    // beta0 from the cheap rank first; skip the d2 elimination when the
    // complex is already disconnected. Both ranks are recomputed from the
    // complex itself on every call.
    if (S.vertices.empty()) return false;
    const Gf2Matrix d1 = boundary_matrix(S, 1);
    const std::size_t r1 = gf2_rank(d1);
    if (S.vertices.size() - r1 != 1) return false;
    const Gf2Matrix d2 = boundary_matrix(S, 2);
    const std::size_t r2 = gf2_rank(d2);
    return S.edges.size() - r1 - r2 == 0;
}

}  // namespace detail

/// Sweep-based greedy removal. Each sweep orders the interior vertices by
/// descending triangle-coface count (ties by ascending id), tentatively
/// deletes each in turn with its cofaces, and accepts the deletion iff the
/// remaining complex keeps beta0 = 1 and beta1 = 0. Stops at the first sweep
/// that accepts nothing, which certifies local minimality of the kept set.
///
/// Throws std::invalid_argument when the input complex is disconnected or
/// holed, or when fence ids are not vertices of S.
inline ReductionOutcome reduce(const SimplicialComplex& S, const std::vector<int>& fence_ids) {
    for (int f : fence_ids)
        if (!S.has_vertex(f))
            throw std::invalid_argument("reduce: fence id is not a vertex of the complex");
    if (betti(S) != BettiPair{1, 0})
        throw std::invalid_argument("reduce: input complex must be connected and hole-free");

    std::vector<int> fence_sorted(fence_ids);
    std::sort(fence_sorted.begin(), fence_sorted.end());
    auto is_fence = [&](int v) {
        return std::binary_search(fence_sorted.begin(), fence_sorted.end(), v);
    };

    SimplicialComplex current = S;
    ReductionOutcome out;

    for (;;) {
        ++out.passes;

        // candidate order for this sweep: most triangle cofaces first
        std::vector<std::pair<int, int>> order;  // (-coface count, id)
        {
            std::vector<int> coface_count(current.vertices.size(), 0);
            for (const auto& t : current.triangles)
                for (int v : t)
                    ++coface_count[detail::vertex_index(current, v)];
            for (std::size_t i = 0; i < current.vertices.size(); ++i) {
                const int v = current.vertices[i];
                if (!is_fence(v)) order.emplace_back(-coface_count[i], v);
            }
            std::sort(order.begin(), order.end());
        }

        bool accepted_any = false;
        for (const auto& [neg_cofaces, v] : order) {
            SimplicialComplex tentative = delete_vertex(current, v);
            if (detail::connected_and_holefree(tentative)) {
                current = std::move(tentative);
                accepted_any = true;
            }
        }
        if (!accepted_any) break;
    }

    out.kept = current.vertices;
    std::set_difference(S.vertices.begin(), S.vertices.end(), out.kept.begin(), out.kept.end(),
                        std::back_inserter(out.discarded));
    return out;
}

}  // namespace kcov
