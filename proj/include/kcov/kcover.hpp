// Layer-peeling driver: repeatedly reduce the complex to a 1-coverage layer,
// discard it, and rebuild on the remaining nodes until connectivity or
// hole-freeness fails. Also the independent grid-based coverage certificate.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "kcov/geometry.hpp"
#include "kcov/reduction.hpp"

namespace kcov {

struct KCoverResult {
    int k = 0;
    Flavor flavor = Flavor::Rips;
    std::vector<std::vector<int>> layers;  // interior ids kept in round 1..k
    std::vector<int> residual;             // interior ids left after the last counted layer
    BettiPair residual_betti;              // of the complex on residual + fence
    std::vector<int> fence_ids;
};

/// Geometric verification of a KCoverResult on a lattice of interior grid
/// points: every layer (with the fence) must cover every grid point, and
/// min_multiplicity is the worst-case number of input disks over any grid
/// point.
struct CoverageCertificate {
    struct Failure {
        Point2 point;
        int layer = 0;
    };
    double grid_spacing = 0.0;
    int min_multiplicity = 0;
    std::vector<bool> per_layer_ok;
    std::vector<Failure> failures;

    bool all_layers_ok() const {
        return std::all_of(per_layer_ok.begin(), per_layer_ok.end(), [](bool b) { return b; });
    }
};

namespace detail {

inline std::vector<Node> nodes_for_ids(const NodeSet& ns, const std::vector<int>& ids) {
    std::vector<Node> out;
    out.reserve(ids.size());
    for (const Node& n : ns.nodes)
        if (std::binary_search(ids.begin(), ids.end(), n.id)) out.push_back(n);
    std::sort(out.begin(), out.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    return out;
}

}  // namespace detail

/// Peel 1-coverage layers. The complex of round 1 spans all nodes; each
/// round's reduction keeps a layer (its interior ids) and the next round
/// rebuilds over the discarded interior ids plus the fence. The loop runs
/// while the complex has beta0 = 1 and beta1 = 0; a round whose layer holds
/// no interior vertex terminates the loop uncounted (the fence alone already
/// sustains the topology, so rounds would repeat forever). k = 0 is a valid
/// result for a disconnected or holed input. Rips rounds use scale 2r, Cech
/// rounds use r.
inline KCoverResult k_coverage(const NodeSet& ns, Flavor flavor) {
    if (!(ns.radius > 0.0)) throw std::invalid_argument("k_coverage: node set radius must be > 0");

    KCoverResult res;
    res.flavor = flavor;
    res.fence_ids = ns.fence_ids();
    res.residual = ns.interior_ids();
    std::sort(res.fence_ids.begin(), res.fence_ids.end());
    std::sort(res.residual.begin(), res.residual.end());
    if (res.fence_ids.empty()) throw std::invalid_argument("k_coverage: node set has no fence");

    const double scale = flavor == Flavor::Rips ? 2.0 * ns.radius : ns.radius;

    auto rebuild = [&](const std::vector<int>& interior) {
        std::vector<int> ids(interior);
        ids.insert(ids.end(), res.fence_ids.begin(), res.fence_ids.end());
        std::sort(ids.begin(), ids.end());
        return detail::build_complex(std::span<const Node>(detail::nodes_for_ids(ns, ids)), flavor,
                                     scale);
    };

    SimplicialComplex S = rebuild(res.residual);
    res.residual_betti = betti(S);
    while (res.residual_betti == BettiPair{1, 0}) {
        const ReductionOutcome round = reduce(S, res.fence_ids);
        std::vector<int> layer;
        std::set_difference(round.kept.begin(), round.kept.end(), res.fence_ids.begin(),
                            res.fence_ids.end(), std::back_inserter(layer));
        if (layer.empty()) break;  // fence-only layer: stop, round not counted
        res.layers.push_back(std::move(layer));
        res.residual = round.discarded;
        S = rebuild(res.residual);
        res.residual_betti = betti(S);
    }
    res.k = static_cast<int>(res.layers.size());
    return res;
}

/// Check the result against plain geometry. For every lattice point strictly
/// inside the square (multiples of grid_spacing) and every layer, the point
/// must lie within the coverage radius of some node of layer + fence;
/// min_multiplicity counts, at the worst grid point, how many of the input
/// disks (all nodes) cover it.
inline CoverageCertificate certify(const NodeSet& ns, const KCoverResult& result,
                                   double grid_spacing) {
    if (!(grid_spacing > 0.0)) throw std::invalid_argument("certify: grid_spacing must be > 0");
    if (!(ns.radius > 0.0)) throw std::invalid_argument("certify: node set radius must be > 0");

    CoverageCertificate cert;
    cert.grid_spacing = grid_spacing;
    cert.per_layer_ok.assign(result.layers.size(), true);

    std::vector<std::vector<Point2>> layer_pts(result.layers.size());
    for (std::size_t i = 0; i < result.layers.size(); ++i) {
        const auto& ids = result.layers[i];
        for (const Node& n : ns.nodes)
            if (n.role == NodeRole::Fence || std::binary_search(ids.begin(), ids.end(), n.id))
                layer_pts[i].push_back(n.pos);
    }

    const double r2 = ns.radius * ns.radius;
    const double L = ns.domain_side;
    int min_mult = -1;
    for (int iy = 1; iy * grid_spacing < L; ++iy) {
        for (int ix = 1; ix * grid_spacing < L; ++ix) {
            const Point2 p{ix * grid_spacing, iy * grid_spacing};
            int mult = 0;
            for (const Node& n : ns.nodes)
                if (dist_sq(n.pos, p) <= r2) ++mult;
            if (min_mult < 0 || mult < min_mult) min_mult = mult;
            for (std::size_t i = 0; i < result.layers.size(); ++i) {
                bool covered = false;
                for (const Point2& q : layer_pts[i])
                    if (dist_sq(q, p) <= r2) { covered = true; break; }
                if (!covered) {
                    cert.per_layer_ok[i] = false;
                    cert.failures.push_back({p, static_cast<int>(i)});
                }
            }
        }
    }
    cert.min_multiplicity = std::max(min_mult, 0);
    return cert;
}

}  // namespace kcov
