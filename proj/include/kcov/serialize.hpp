// JSON interchange. Writers are hand-rolled so field order and float
// formatting are fixed byte-for-byte (floats use up to 17 significant
// digits, enough to round-trip doubles exactly); parsing goes through
// nlohmann::json and accepts fields in any order.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kcov/geometry.hpp"
#include "kcov/kcover.hpp"

namespace kcov {

namespace detail {

inline void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace detail

inline std::string write_node_set(const NodeSet& ns) {
    std::string out = "{\"radius\":";
    detail::append_double(out, ns.radius);
    out += ",\"domain_side\":";
    detail::append_double(out, ns.domain_side);
    out += ",\"nodes\":[";
    for (std::size_t i = 0; i < ns.nodes.size(); ++i) {
        const Node& n = ns.nodes[i];
        if (i) out += ",";
        out += "{\"id\":" + std::to_string(n.id) + ",\"x\":";
        detail::append_double(out, n.pos.x);
        out += ",\"y\":";
        detail::append_double(out, n.pos.y);
        out += ",\"role\":\"";
        out += n.role == NodeRole::Interior ? "interior" : "fence";
        out += "\"}";
    }
    out += "],\"meta\":{\"seed\":";
    out += ns.seed ? std::to_string(*ns.seed) : "null";
    out += ",\"generator\":\"" + ns.generator + "\"}}";
    return out;
}

/// Parse a NodeSet; throws std::invalid_argument on malformed input or
/// violated invariants (ids must be unique and contiguous from 0).
inline NodeSet read_node_set(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("read_node_set: malformed JSON: ") + e.what());
    }
    NodeSet ns;
    try {
        ns.radius = j.at("radius").get<double>();
        ns.domain_side = j.at("domain_side").get<double>();
        for (const auto& jn : j.at("nodes")) {
            Node n;
            n.id = jn.at("id").get<int>();
            n.pos.x = jn.at("x").get<double>();
            n.pos.y = jn.at("y").get<double>();
            const std::string role = jn.at("role").get<std::string>();
            if (role == "interior") n.role = NodeRole::Interior;
            else if (role == "fence") n.role = NodeRole::Fence;
            else throw std::invalid_argument("read_node_set: unknown role \"" + role + "\"");
            ns.nodes.push_back(n);
        }
        if (j.contains("meta")) {
            const auto& meta = j.at("meta");
            if (meta.contains("seed") && !meta.at("seed").is_null())
                ns.seed = meta.at("seed").get<std::uint64_t>();
            if (meta.contains("generator")) ns.generator = meta.at("generator").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("read_node_set: bad schema: ") + e.what());
    }
    std::vector<bool> seen(ns.nodes.size(), false);
    for (const Node& n : ns.nodes) {
        if (n.id < 0 || static_cast<std::size_t>(n.id) >= ns.nodes.size() ||
            seen[static_cast<std::size_t>(n.id)])
            throw std::invalid_argument("read_node_set: node ids must be unique and contiguous from 0");
        seen[static_cast<std::size_t>(n.id)] = true;
    }
    return ns;
}

/// Debug/test dump of a complex; all simplex lists are already sorted
/// lexicographically.
inline std::string write_complex(const SimplicialComplex& S) {
    std::string out = "{\"flavor\":\"";
    out += flavor_name(S.flavor);
    out += "\",\"scale\":";
    detail::append_double(out, S.scale);
    out += ",\"vertices\":[";
    for (std::size_t i = 0; i < S.vertices.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(S.vertices[i]);
    }
    out += "],\"edges\":[";
    for (std::size_t i = 0; i < S.edges.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(S.edges[i][0]) + "," + std::to_string(S.edges[i][1]) + "]";
    }
    out += "],\"triangles\":[";
    for (std::size_t i = 0; i < S.triangles.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(S.triangles[i][0]) + "," + std::to_string(S.triangles[i][1]) +
               "," + std::to_string(S.triangles[i][2]) + "]";
    }
    out += "]}";
    return out;
}

namespace detail {

inline void append_id_list(std::string& out, const std::vector<int>& ids) {
    out += "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ids[i]);
    }
    out += "]";
}

}  // namespace detail

inline std::string write_kcover_result(const KCoverResult& res) {
    std::string out = "{\"k\":" + std::to_string(res.k) + ",\"flavor\":\"";
    out += flavor_name(res.flavor);
    out += "\",\"layers\":[";
    for (std::size_t i = 0; i < res.layers.size(); ++i) {
        if (i) out += ",";
        detail::append_id_list(out, res.layers[i]);
    }
    out += "],\"residual\":";
    detail::append_id_list(out, res.residual);
    out += ",\"residual_betti\":[" + std::to_string(res.residual_betti.beta0) + "," +
           std::to_string(res.residual_betti.beta1) + "],\"fence_ids\":";
    detail::append_id_list(out, res.fence_ids);
    out += "}";
    return out;
}

inline std::string write_certificate(const CoverageCertificate& cert) {
    std::string out = "{\"grid_spacing\":";
    detail::append_double(out, cert.grid_spacing);
    out += ",\"min_multiplicity\":" + std::to_string(cert.min_multiplicity);
    out += ",\"per_layer_ok\":[";
    for (std::size_t i = 0; i < cert.per_layer_ok.size(); ++i) {
        if (i) out += ",";
        out += cert.per_layer_ok[i] ? "true" : "false";
    }
    out += "],\"failures\":[";
    for (std::size_t i = 0; i < cert.failures.size(); ++i) {
        if (i) out += ",";
        out += "{\"x\":";
        detail::append_double(out, cert.failures[i].point.x);
        out += ",\"y\":";
        detail::append_double(out, cert.failures[i].point.y);
        out += ",\"layer\":" + std::to_string(cert.failures[i].layer) + "}";
    }
    out += "]}";
    return out;
}

}  // namespace kcov
