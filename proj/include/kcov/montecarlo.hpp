// Batch experiment harness: mean number of coverage layers over repeated
// Poisson draws per intensity, for both complex flavors, with standard
// errors and the analytic mean as reference.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kcov/analytic.hpp"
#include "kcov/kcover.hpp"
#include "kcov/serialize.hpp"

namespace kcov {

struct ExperimentConfig {
    std::vector<double> lambdas;
    int runs = 200;
    std::uint64_t base_seed = 0;
    double domain_side = 10.0;
    double radius = 2.5;
    std::vector<Flavor> flavors{Flavor::Rips, Flavor::Cech};
    double fence_spacing = 2.5;
    double grid_spacing = 0.1;
    bool certify = false;
    int threads = 0;  // 0 = hardware concurrency
};

struct ExperimentRow {
    double lambda = 0.0;
    double m = 0.0;  // lambda * pi * r^2
    Flavor flavor = Flavor::Rips;
    double mean_k = 0.0;
    double stderr_mean = 0.0;
    int runs_completed = 0;
    double mean_residual_beta1 = 0.0;
    std::vector<int> ks;  // per-run k values, run index order
};

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

/// Seed-splitting rule: the run at intensity index j, run index i draws its
/// node set from seed_for(base, j, i). Each argument is absorbed into the
/// state with the splitmix64 increment before finalizing, so distinct (j, i)
/// give independent streams and reruns are reproducible.
inline std::uint64_t seed_for(std::uint64_t base, std::uint64_t j, std::uint64_t i) {
    std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ULL);
    h = mix64(h + j + 0x9e3779b97f4a7c15ULL);
    h = mix64(h + i + 0x9e3779b97f4a7c15ULL);
    return h;
}

namespace detail {

/// Fixed-size worker pool over [0, total): items are claimed from an atomic
/// counter and every item writes only its own output slot, so results do not
/// depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t total, int threads, Fn&& fn) {
    if (total == 0) return;
    unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    n = static_cast<unsigned>(std::min<std::size_t>(n, total));
    if (n == 1) {
        for (std::size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(total);  // drain remaining work
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Runs `cfg.runs` independent Poisson draws per intensity (seeds split
/// deterministically from base_seed), attaches the fence, peels layers with
/// k_coverage for each requested flavor, and aggregates mean k and its
/// standard error. The node set of run (j, i) is shared by all flavors.
///
/// With cfg.certify every result must pass the grid certificate; a failure
/// aborts the whole experiment with the offending node set serialized into
/// the exception text, since it indicates a defect rather than noise.
inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.lambdas.empty()) throw std::invalid_argument("run_experiment: lambdas must be nonempty");
    if (cfg.runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");
    if (cfg.flavors.empty()) throw std::invalid_argument("run_experiment: flavors must be nonempty");

    struct RunOut {
        int k = 0;
        int residual_beta1 = 0;
    };
    const std::size_t n_lambda = cfg.lambdas.size();
    const std::size_t n_runs = static_cast<std::size_t>(cfg.runs);
    const std::size_t n_flavors = cfg.flavors.size();
    std::vector<RunOut> results(n_lambda * n_runs * n_flavors);

    detail::parallel_for(n_lambda * n_runs, cfg.threads, [&](std::size_t item) {
        const std::size_t j = item / n_runs;
        const std::size_t i = item % n_runs;
        PoissonConfig pc;
        pc.intensity = cfg.lambdas[j];
        pc.domain_side = cfg.domain_side;
        pc.seed = seed_for(cfg.base_seed, j, i);
        NodeSet ns = sample_poisson(pc);
        ns.radius = cfg.radius;
        ns = attach_fence(std::move(ns), cfg.fence_spacing);
        for (std::size_t f = 0; f < n_flavors; ++f) {
            const KCoverResult res = k_coverage(ns, cfg.flavors[f]);
            if (cfg.certify) {
                const CoverageCertificate cert = certify(ns, res, cfg.grid_spacing);
                if (!cert.all_layers_ok() || cert.min_multiplicity < res.k)
                    throw std::runtime_error(
                        std::string("run_experiment: certification failed (flavor ") +
                        flavor_name(cfg.flavors[f]) + ", lambda index " + std::to_string(j) +
                        ", run " + std::to_string(i) + "); offending node set:\n" +
                        write_node_set(ns));
            }
            results[(j * n_runs + i) * n_flavors + f] = {res.k, res.residual_betti.beta1};
        }
    });

    std::vector<ExperimentRow> rows;
    for (std::size_t j = 0; j < n_lambda; ++j) {
        for (std::size_t f = 0; f < n_flavors; ++f) {
            ExperimentRow row;
            row.lambda = cfg.lambdas[j];
            row.m = cfg.lambdas[j] * kPi * cfg.radius * cfg.radius;
            row.flavor = cfg.flavors[f];
            row.runs_completed = cfg.runs;
            double sum = 0.0, sum_b1 = 0.0;
            for (std::size_t i = 0; i < n_runs; ++i) {
                const RunOut& r = results[(j * n_runs + i) * n_flavors + f];
                row.ks.push_back(r.k);
                sum += r.k;
                sum_b1 += r.residual_beta1;
            }
            row.mean_k = sum / static_cast<double>(n_runs);
            row.mean_residual_beta1 = sum_b1 / static_cast<double>(n_runs);
            if (n_runs > 1) {
                double ss = 0.0;
                for (int k : row.ks) {
                    const double d = k - row.mean_k;
                    ss += d * d;
                }
                row.stderr_mean =
                    std::sqrt(ss / static_cast<double>(n_runs - 1)) / std::sqrt(static_cast<double>(n_runs));
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

struct TheoryGap {
    double lambda = 0.0;
    double m = 0.0;
    Flavor flavor = Flavor::Rips;
    double mean_k = 0.0;
    double theory_mean = 0.0;  // E[k] = m
    double gap = 0.0;          // theory_mean - mean_k
};

/// Appends the analytic mean E[k] = m and the gap m - mean_k to each row.
/// Simulated layer counts must sit below the point-coverage mean whenever
/// m >= 1; a nonpositive gap there throws, as it signals a defect.
inline std::vector<TheoryGap> compare_to_theory(const std::vector<ExperimentRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("compare_to_theory: rows must be nonempty");
    std::vector<TheoryGap> out;
    for (const ExperimentRow& r : rows) {
        TheoryGap g;
        g.lambda = r.lambda;
        g.m = r.m;
        g.flavor = r.flavor;
        g.mean_k = r.mean_k;
        g.theory_mean = r.m;
        g.gap = r.m - r.mean_k;
        if (r.m >= 1.0 && !(g.gap > 0.0))
            throw std::logic_error("compare_to_theory: simulated mean k is not below the analytic mean");
        out.push_back(g);
    }
    return out;
}

/// CSV emission, one row per (lambda, flavor), 12 significant digits.
inline std::string table_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "lambda,m,flavor,runs,mean_k,stderr,mean_residual_beta1,theory_mean\n";
    char buf[256];
    for (const ExperimentRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s,%d,%.12g,%.12g,%.12g,%.12g\n", r.lambda, r.m,
                      flavor_name(r.flavor), r.runs_completed, r.mean_k, r.stderr_mean,
                      r.mean_residual_beta1, r.m);
        out += buf;
    }
    return out;
}

/// JSON variant with a per-run k histogram per row, for plotting.
inline std::string experiment_json(const std::vector<ExperimentRow>& rows) {
    std::string out = "{\"rows\":[";
    char buf[256];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ExperimentRow& r = rows[i];
        if (i) out += ",";
        std::snprintf(buf, sizeof buf,
                      "{\"lambda\":%.12g,\"m\":%.12g,\"flavor\":\"%s\",\"runs\":%d,\"mean_k\":%.12g,"
                      "\"stderr\":%.12g,\"mean_residual_beta1\":%.12g,\"theory_mean\":%.12g,"
                      "\"k_histogram\":{",
                      r.lambda, r.m, flavor_name(r.flavor), r.runs_completed, r.mean_k, r.stderr_mean,
                      r.mean_residual_beta1, r.m);
        out += buf;
        std::map<int, int> hist;
        for (int k : r.ks) ++hist[k];
        bool first = true;
        for (const auto& [k, count] : hist) {
            std::snprintf(buf, sizeof buf, "%s\"%d\":%d", first ? "" : ",", k, count);
            out += buf;
            first = false;
        }
        out += "}}";
    }
    out += "]}";
    return out;
}

}  // namespace kcov
