#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "kcov/serialize.hpp"

using namespace kcov;

TEST_CASE("node set JSON: fixed field order and 17-digit floats") {
    NodeSet ns;
    ns.radius = 2.5;
    ns.domain_side = 10.0;
    ns.seed = 7;
    ns.generator = kGeneratorId;
    ns.nodes = {{0, {0.1, 9.75}, NodeRole::Interior}, {1, {0.0, 10.0}, NodeRole::Fence}};
    const std::string text = write_node_set(ns);

    const auto pos = [&](const char* key) { return text.find(key); };
    CHECK(pos("\"radius\"") < pos("\"domain_side\""));
    CHECK(pos("\"domain_side\"") < pos("\"nodes\""));
    CHECK(pos("\"nodes\"") < pos("\"meta\""));
    CHECK(pos("\"id\"") < pos("\"x\""));
    CHECK(pos("\"x\"") < pos("\"y\""));
    CHECK(pos("\"y\"") < pos("\"role\""));
    // 0.1 is not representable; 17 significant digits expose that
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"seed\":7") != std::string::npos);
}

TEST_CASE("node set JSON round trip preserves every field") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        NodeSet ns;
        ns.radius = u(rng);
        ns.domain_side = 10.0;
        if (trial % 2) ns.seed = rng();
        ns.generator = trial % 3 ? kGeneratorId : "";
        const int n = 1 + static_cast<int>(u(rng));
        for (int i = 0; i < n; ++i)
            ns.nodes.push_back(Node{i, {u(rng), u(rng)},
                                    i % 3 == 0 ? NodeRole::Fence : NodeRole::Interior});
        const NodeSet back = read_node_set(write_node_set(ns));
        REQUIRE(back.nodes.size() == ns.nodes.size());
        CHECK(back.radius == ns.radius);
        CHECK(back.domain_side == ns.domain_side);
        CHECK(back.seed == ns.seed);
        CHECK(back.generator == ns.generator);
        for (std::size_t i = 0; i < ns.nodes.size(); ++i) {
            CHECK(back.nodes[i].id == ns.nodes[i].id);
            CHECK(back.nodes[i].pos.x == ns.nodes[i].pos.x);  // bit-exact via 17 digits
            CHECK(back.nodes[i].pos.y == ns.nodes[i].pos.y);
            CHECK(back.nodes[i].role == ns.nodes[i].role);
        }
    }
}

TEST_CASE("read_node_set rejects malformed input") {
    CHECK_THROWS_AS(read_node_set("not json"), std::invalid_argument);
    CHECK_THROWS_AS(read_node_set("{}"), std::invalid_argument);
    CHECK_THROWS_AS(read_node_set(R"({"radius":1,"domain_side":10,"nodes":[{"id":0,"x":1,"y":1,"role":"weird"}]})"),
                    std::invalid_argument);
    // duplicate id
    CHECK_THROWS_AS(read_node_set(R"({"radius":1,"domain_side":10,"nodes":[)"
                                  R"({"id":0,"x":1,"y":1,"role":"interior"},)"
                                  R"({"id":0,"x":2,"y":2,"role":"interior"}]})"),
                    std::invalid_argument);
    // gap in ids
    CHECK_THROWS_AS(read_node_set(R"({"radius":1,"domain_side":10,"nodes":[)"
                                  R"({"id":0,"x":1,"y":1,"role":"interior"},)"
                                  R"({"id":2,"x":2,"y":2,"role":"interior"}]})"),
                    std::invalid_argument);
}

TEST_CASE("complex, result and certificate dumps parse as JSON with the fixed keys") {
    NodeSet ns;
    ns.radius = 1.0;
    ns.domain_side = 10.0;
    ns.nodes = {{0, {0, 0}, NodeRole::Interior},
                {1, {1, 0}, NodeRole::Interior},
                {2, {0.5, 0.8}, NodeRole::Interior}};
    const SimplicialComplex S = build_rips(ns, 1.2);
    const auto jc = nlohmann::json::parse(write_complex(S));
    CHECK(jc.at("flavor") == "rips");
    CHECK(jc.at("scale") == 1.2);
    CHECK(jc.at("vertices").size() == 3);
    CHECK(jc.at("edges").size() == 3);
    CHECK(jc.at("triangles").size() == 1);

    KCoverResult res;
    res.k = 2;
    res.flavor = Flavor::Cech;
    res.layers = {{0, 2}, {1}};
    res.residual = {3};
    res.residual_betti = {1, 1};
    res.fence_ids = {4, 5};
    const auto jr = nlohmann::json::parse(write_kcover_result(res));
    CHECK(jr.at("k") == 2);
    CHECK(jr.at("flavor") == "cech");
    CHECK(jr.at("layers").size() == 2);
    CHECK(jr.at("layers")[0] == nlohmann::json::array({0, 2}));
    CHECK(jr.at("residual") == nlohmann::json::array({3}));
    CHECK(jr.at("residual_betti") == nlohmann::json::array({1, 1}));
    CHECK(jr.at("fence_ids") == nlohmann::json::array({4, 5}));

    CoverageCertificate cert;
    cert.grid_spacing = 0.1;
    cert.min_multiplicity = 3;
    cert.per_layer_ok = {true, false};
    cert.failures = {{{1.5, 2.5}, 1}};
    const auto jcert = nlohmann::json::parse(write_certificate(cert));
    CHECK(jcert.at("grid_spacing") == 0.1);
    CHECK(jcert.at("min_multiplicity") == 3);
    CHECK(jcert.at("per_layer_ok") == nlohmann::json::array({true, false}));
    CHECK(jcert.at("failures")[0].at("layer") == 1);
}
