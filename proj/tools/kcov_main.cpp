// kcov: command-line front end. Subcommands generate node sets, compute
// Betti numbers, peel coverage layers (with optional certification), and
// emit the analytic curves and the simulation table as CSV. Results go to
// stdout as JSON/CSV; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 usage or input error, 3 certification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kcov/analytic.hpp"
#include "kcov/kcover.hpp"
#include "kcov/montecarlo.hpp"
#include "kcov/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCertification = 3;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

kcov::Flavor parse_flavor(const std::string& name) {
    if (name == "rips") return kcov::Flavor::Rips;
    if (name == "cech") return kcov::Flavor::Cech;
    throw std::invalid_argument("unknown flavor \"" + name + "\" (expected rips or cech)");
}

// "start:stop:step", inclusive of stop up to float rounding
std::vector<double> parse_range(const std::string& text) {
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3 ||
        !(step > 0.0) || stop < start)
        throw std::invalid_argument("bad range \"" + text + "\" (expected start:stop:step)");
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    return out;
}

std::vector<kcov::Flavor> parse_flavors(const std::string& text) {
    std::vector<kcov::Flavor> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_flavor(item));
    if (out.empty()) throw std::invalid_argument("no flavors given");
    return out;
}

// scale convention: a node set with coverage radius r is represented by the
// Rips complex at 2r or the Cech complex at r
kcov::SimplicialComplex build_for(const kcov::NodeSet& ns, kcov::Flavor flavor) {
    return flavor == kcov::Flavor::Rips ? kcov::build_rips(ns, 2.0 * ns.radius)
                                        : kcov::build_cech(ns, ns.radius);
}

struct GenerateArgs {
    double lambda = 0.0;
    int count = -1;
    double side = 10.0;
    std::uint64_t seed = 0;
    double hardcore = 0.0;
    double fence_spacing = 0.0;
    double radius = 2.5;
};

int cmd_generate(const GenerateArgs& a, bool lambda_given, bool count_given) {
    if (lambda_given == count_given) {
        std::cerr << "generate: exactly one of --lambda / --count is required\n";
        return kExitUsage;
    }
    kcov::NodeSet ns;
    if (lambda_given) {
        kcov::PoissonConfig cfg;
        cfg.intensity = a.lambda;
        cfg.domain_side = a.side;
        cfg.seed = a.seed;
        cfg.hardcore_distance = a.hardcore;
        ns = a.hardcore > 0.0 ? kcov::sample_hardcore(cfg) : kcov::sample_poisson(cfg);
    } else {
        ns = kcov::sample_fixed_count(a.count, a.side, a.seed, a.hardcore);
    }
    ns.radius = a.radius;
    if (a.fence_spacing > 0.0) ns = kcov::attach_fence(std::move(ns), a.fence_spacing);
    std::cout << kcov::write_node_set(ns) << "\n";
    return kExitOk;
}

struct ComplexArgs {
    std::string input;
    std::string flavor = "rips";
    double radius = 0.0;  // 0 = use the input's radius
};

int cmd_betti(const ComplexArgs& a) {
    kcov::NodeSet ns = kcov::read_node_set(read_input(a.input));
    if (a.radius > 0.0) ns.radius = a.radius;
    if (!(ns.radius > 0.0)) throw std::invalid_argument("betti: radius missing (set --radius)");
    const kcov::Flavor flavor = parse_flavor(a.flavor);
    const kcov::SimplicialComplex S = build_for(ns, flavor);
    const kcov::BettiPair b = kcov::betti(S);
    std::printf("{\"flavor\":\"%s\",\"scale\":%.17g,\"vertices\":%zu,\"edges\":%zu,"
                "\"triangles\":%zu,\"beta0\":%d,\"beta1\":%d}\n",
                kcov::flavor_name(flavor), S.scale, S.vertices.size(), S.edges.size(),
                S.triangles.size(), b.beta0, b.beta1);
    return kExitOk;
}

struct KcoverArgs {
    std::string input;
    std::string flavor = "rips";
    double radius = 0.0;
    double fence_spacing = 0.0;  // 0 = default to the coverage radius
    bool certify = false;
    double grid_spacing = 0.0;  // 0 = radius / 25
};

int cmd_kcover(const KcoverArgs& a) {
    kcov::NodeSet ns = kcov::read_node_set(read_input(a.input));
    if (a.radius > 0.0) ns.radius = a.radius;
    if (!(ns.radius > 0.0)) throw std::invalid_argument("kcover: radius missing (set --radius)");
    if (ns.fence_ids().empty()) {
        const double spacing = a.fence_spacing > 0.0 ? a.fence_spacing : ns.radius;
        ns = kcov::attach_fence(std::move(ns), spacing);
    }
    const kcov::KCoverResult res = kcov::k_coverage(ns, parse_flavor(a.flavor));
    std::string out = kcov::write_kcover_result(res);
    bool cert_failed = false;
    if (a.certify) {
        const double spacing = a.grid_spacing > 0.0 ? a.grid_spacing : ns.radius / 25.0;
        const kcov::CoverageCertificate cert = kcov::certify(ns, res, spacing);
        cert_failed = !cert.all_layers_ok() || cert.min_multiplicity < res.k;
        out.pop_back();  // reopen the result object to append the certificate
        out += ",\"certificate\":" + kcov::write_certificate(cert) + "}";
    }
    std::cout << out << "\n";
    return cert_failed ? kExitCertification : kExitOk;
}

struct CurvesArgs {
    int kmax = 6;
    double m_max = 10.0;
    double m_step = 0.1;
};

int cmd_curves(const CurvesArgs& a) {
    if (a.kmax < 1 || !(a.m_step > 0.0) || !(a.m_max >= 0.0))
        throw std::invalid_argument("curves: need kmax >= 1, m-step > 0, m-max >= 0");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor(a.m_max / a.m_step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) grid.push_back(i * a.m_step);
    std::cout << kcov::curves_csv(a.kmax, grid);
    return kExitOk;
}

struct TableArgs {
    std::string lambdas = "0.05:0.35:0.05";
    int runs = 200;
    std::uint64_t seed = 42;
    std::string flavors = "rips,cech";
    bool certify = false;
};

int cmd_table(const TableArgs& a) {
    kcov::ExperimentConfig cfg;
    cfg.lambdas = parse_range(a.lambdas);
    cfg.runs = a.runs;
    cfg.base_seed = a.seed;
    cfg.flavors = parse_flavors(a.flavors);
    cfg.certify = a.certify;
    try {
        std::cout << kcov::table_csv(kcov::run_experiment(cfg));
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitCertification;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-coverage of planar wireless networks via simplicial homology"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* sub_gen = app.add_subcommand("generate", "Sample a node set and print it as JSON");
    auto* opt_lambda = sub_gen->add_option("--lambda", gen.lambda, "Poisson intensity per unit area");
    auto* opt_count = sub_gen->add_option("--count", gen.count, "Fixed number of interior nodes");
    sub_gen->add_option("--side", gen.side, "Domain side length L")->capture_default_str();
    sub_gen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    sub_gen->add_option("--hardcore", gen.hardcore, "Hard-core exclusion distance (0 = off)")
        ->capture_default_str();
    sub_gen->add_option("--fence-spacing", gen.fence_spacing,
                        "Attach boundary fence nodes at most this far apart (0 = no fence)")
        ->capture_default_str();
    sub_gen->add_option("--radius", gen.radius, "Coverage radius recorded in the output")
        ->capture_default_str();

    ComplexArgs bet;
    auto* sub_betti = app.add_subcommand("betti", "Betti numbers of the complex over a node set");
    sub_betti->add_option("--input", bet.input, "Node set JSON file (default: stdin)");
    sub_betti->add_option("--flavor", bet.flavor, "rips or cech")->capture_default_str();
    sub_betti->add_option("--radius", bet.radius, "Override the input's coverage radius");

    KcoverArgs kc;
    auto* sub_kcover = app.add_subcommand("kcover", "Peel 1-coverage layers and report k");
    sub_kcover->add_option("--input", kc.input, "Node set JSON file (default: stdin)");
    sub_kcover->add_option("--flavor", kc.flavor, "rips or cech")->capture_default_str();
    sub_kcover->add_option("--radius", kc.radius, "Override the input's coverage radius");
    sub_kcover->add_option("--fence-spacing", kc.fence_spacing,
                           "Fence spacing when the input has no fence (default: radius)");
    sub_kcover->add_flag("--certify", kc.certify, "Verify every layer on the coverage grid");
    sub_kcover->add_option("--grid-spacing", kc.grid_spacing,
                           "Certificate grid spacing (default: radius / 25)");

    CurvesArgs cur;
    auto* sub_curves = app.add_subcommand("curves", "Analytic k-coverage probability curves as CSV");
    sub_curves->add_option("--kmax", cur.kmax, "Largest k column")->capture_default_str();
    sub_curves->add_option("--m-max", cur.m_max, "Largest disk mass m")->capture_default_str();
    sub_curves->add_option("--m-step", cur.m_step, "Grid step in m")->capture_default_str();

    TableArgs tab;
    auto* sub_table = app.add_subcommand("table", "Mean layer count per intensity as CSV");
    sub_table->add_option("--lambdas", tab.lambdas, "Intensity grid start:stop:step")
        ->capture_default_str();
    sub_table->add_option("--runs", tab.runs, "Runs per intensity")->capture_default_str();
    sub_table->add_option("--seed", tab.seed, "Base seed")->capture_default_str();
    sub_table->add_option("--flavors", tab.flavors, "Comma-separated: rips,cech")
        ->capture_default_str();
    sub_table->add_flag("--certify", tab.certify, "Certify every run; abort on failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sub_gen->parsed()) return cmd_generate(gen, opt_lambda->count() > 0, opt_count->count() > 0);
        if (sub_betti->parsed()) return cmd_betti(bet);
        if (sub_kcover->parsed()) return cmd_kcover(kc);
        if (sub_curves->parsed()) return cmd_curves(cur);
        if (sub_table->parsed()) return cmd_table(tab);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
