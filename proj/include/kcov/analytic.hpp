// Closed-form coverage probabilities for a homogeneous Poisson deployment
// with common disk radius: everything is a function of the disk mass
// m = lambda * pi * r^2.
#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcov {

inline constexpr double kPi = 3.14159265358979323846;

struct PoissonCoverageParams {
    double intensity = 0.0;
    double radius = 0.0;
    double mass = 0.0;  // lambda * pi * r^2

    static PoissonCoverageParams from_intensity_radius(double lambda, double r) {
        if (!(lambda > 0.0) || !(r > 0.0))
            throw std::invalid_argument("PoissonCoverageParams: lambda and r must be > 0");
        return {lambda, r, lambda * kPi * r * r};
    }
    static PoissonCoverageParams from_mass(double m) {
        if (!(m >= 0.0)) throw std::invalid_argument("PoissonCoverageParams: mass must be >= 0");
        return {m / kPi, 1.0, m};
    }
};

namespace detail {

// P[Poisson(m) >= k] evaluated with the term recurrence t_{i+1} = t_i*m/(i+1)
// from t_0 = e^-m. When the head sum is large the tail is summed directly,
// which keeps full relative precision for probabilities near 0.
inline double poisson_tail(double m, int k) {
    if (m == 0.0) return 0.0;
    double term = std::exp(-m);
    double head = 0.0;
    for (int i = 0; i < k; ++i) {
        head += term;
        term *= m / (i + 1);
    }
    if (head <= 0.5) return 1.0 - head;
    double tail = 0.0;
    for (int i = k; ; ++i) {
        tail += term;
        term *= m / (i + 1);
        if (i > m && term < tail * 1e-18) break;
    }
    return tail;
}

}  // namespace detail

/// Probability that a fixed point of the plane is covered by at least k
/// disks: 1 - sum_{i=0}^{k-1} e^-m m^i / i!.
inline double p_k_covered(const PoissonCoverageParams& params, int k) {
    if (k < 1) throw std::invalid_argument("p_k_covered: k must be >= 1");
    return detail::poisson_tail(params.mass, k);
}

/// Probability of exactly k covering disks: the Poisson pmf e^-m m^k / k!.
inline double p_exactly_k(const PoissonCoverageParams& params, int k) {
    if (k < 0) throw std::invalid_argument("p_exactly_k: k must be >= 0");
    const double m = params.mass;
    if (m == 0.0) return k == 0 ? 1.0 : 0.0;
    double term = std::exp(-m);
    for (int i = 0; i < k; ++i) term *= m / (i + 1);
    return term;
}

/// Mean number of disks covering a fixed point: exactly m = lambda*pi*r^2.
inline double mean_k(const PoissonCoverageParams& params) { return params.mass; }

/// Rows indexed by the m grid, columns by k = 1..kmax, entries p_k_covered.
inline std::vector<std::vector<double>> curve_table(int kmax, const std::vector<double>& m_grid) {
    if (kmax < 1) throw std::invalid_argument("curve_table: kmax must be >= 1");
    std::vector<std::vector<double>> out;
    out.reserve(m_grid.size());
    for (double m : m_grid) {
        std::vector<double> row(static_cast<std::size_t>(kmax));
        for (int k = 1; k <= kmax; ++k)
            row[static_cast<std::size_t>(k - 1)] = detail::poisson_tail(m, k);
        out.push_back(std::move(row));
    }
    return out;
}

/// CSV emission: header "m,k1,...,k<kmax>", one row per m, 12 significant digits.
inline std::string curves_csv(int kmax, const std::vector<double>& m_grid) {
    const auto table = curve_table(kmax, m_grid);
    std::string out = "m";
    for (int k = 1; k <= kmax; ++k) out += ",k" + std::to_string(k);
    out += "\n";
    char buf[64];
    for (std::size_t i = 0; i < m_grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", m_grid[i]);
        out += buf;
        for (double p : table[i]) {
            std::snprintf(buf, sizeof buf, ",%.12g", p);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace kcov
