// Betti numbers beta0/beta1 of a dimension-2 complex via boundary-matrix
// ranks over GF(2), with a union-find component count as independent check.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kcov/complex.hpp"

namespace kcov {

/// Dense bit matrix over the two-element field, stored column-major in
/// 64-bit words (column c occupies words [c*words_per_col, (c+1)*words_per_col)).
class Gf2Matrix {
public:
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_(rows == 0 ? 1 : (rows + 63) / 64),
          bits_(words_ * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_col() const { return words_; }

    void set(std::size_t r, std::size_t c) { bits_[c * words_ + r / 64] |= 1ULL << (r % 64); }
    bool get(std::size_t r, std::size_t c) const {
        return (bits_[c * words_ + r / 64] >> (r % 64)) & 1ULL;
    }
    const std::uint64_t* column(std::size_t c) const { return bits_.data() + c * words_; }

private:
    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> bits_;
};

namespace detail {

inline int lowest_set_row(const std::uint64_t* col, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w)
        if (col[w]) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(col[w])));
    return -1;
}

}  // namespace detail

/// Rank over GF(2) by column elimination: each column is reduced against the
/// pivot columns recorded so far until it is zero or contributes a new pivot.
inline std::size_t gf2_rank(const Gf2Matrix& M) {
    const std::size_t words = M.words_per_col();
    std::vector<std::uint64_t> pivots;          // reduced pivot columns, packed
    std::vector<int> pivot_of_row(M.rows(), -1);  // row -> index into pivots
    std::vector<std::uint64_t> work(words);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < M.cols(); ++c) {
        std::copy(M.column(c), M.column(c) + words, work.begin());
        for (;;) {
            const int row = detail::lowest_set_row(work.data(), words);
            if (row < 0) break;  // column eliminated
            const int p = pivot_of_row[static_cast<std::size_t>(row)];
            if (p < 0) {
                pivot_of_row[static_cast<std::size_t>(row)] = static_cast<int>(rank);
                pivots.insert(pivots.end(), work.begin(), work.end());
                ++rank;
                break;
            }
            const std::uint64_t* pc = pivots.data() + static_cast<std::size_t>(p) * words;
            for (std::size_t w = 0; w < words; ++w) work[w] ^= pc[w];
        }
    }
    return rank;
}

struct BettiPair {
    int beta0 = 0;
    int beta1 = 0;
    bool operator==(const BettiPair&) const = default;
};

namespace detail {

inline std::size_t edge_index(const SimplicialComplex& S, int a, int b) {
    const std::array<int, 2> e{a, b};
    const auto it = std::lower_bound(S.edges.begin(), S.edges.end(), e);
    if (it == S.edges.end() || *it != e)
        throw std::logic_error("boundary_matrix: triangle face edge missing (closure violated)");
    return static_cast<std::size_t>(it - S.edges.begin());
}

inline std::size_t vertex_index(const SimplicialComplex& S, int v) {
    const auto it = std::lower_bound(S.vertices.begin(), S.vertices.end(), v);
    if (it == S.vertices.end() || *it != v)
        throw std::logic_error("boundary_matrix: edge endpoint missing (closure violated)");
    return static_cast<std::size_t>(it - S.vertices.begin());
}

}  // namespace detail

/// Matrix of the boundary map in the sorted simplex bases, signs reduced
/// mod 2. k=1: rows are vertices, columns edges. k=2: rows are edges,
/// columns triangles.
inline Gf2Matrix boundary_matrix(const SimplicialComplex& S, int k) {
    if (k == 1) {
        Gf2Matrix M(S.vertices.size(), S.edges.size());
        for (std::size_t c = 0; c < S.edges.size(); ++c) {
            M.set(detail::vertex_index(S, S.edges[c][0]), c);
            M.set(detail::vertex_index(S, S.edges[c][1]), c);
        }
        return M;
    }
    if (k == 2) {
        Gf2Matrix M(S.edges.size(), S.triangles.size());
        for (std::size_t c = 0; c < S.triangles.size(); ++c) {
            const auto& t = S.triangles[c];
            M.set(detail::edge_index(S, t[0], t[1]), c);
            M.set(detail::edge_index(S, t[0], t[2]), c);
            M.set(detail::edge_index(S, t[1], t[2]), c);
        }
        return M;
    }
    throw std::invalid_argument("boundary_matrix: k must be 1 or 2");
}

/// Number of connected components of the 1-skeleton (union-find).
inline int count_components(const SimplicialComplex& S) {
    std::vector<int> parent(S.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int components = static_cast<int>(S.vertices.size());
    for (const auto& e : S.edges) {
        const int a = find(static_cast<int>(detail::vertex_index(S, e[0])));
        const int b = find(static_cast<int>(detail::vertex_index(S, e[1])));
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
        }
    }
    return components;
}

/// Exact Betti numbers of the truncated complex:
///   beta0 = |V| - rank d1,   beta1 = (|E| - rank d1) - rank d2.
/// Also verifies the chain identity d1*d2 = 0 on the constructed matrices
/// and throws std::logic_error if it fails.
inline BettiPair betti(const SimplicialComplex& S) {
    const Gf2Matrix d1 = boundary_matrix(S, 1);
    const Gf2Matrix d2 = boundary_matrix(S, 2);

    // d1*d2 = 0: the three d1-columns of each triangle's faces XOR to zero.
    const std::size_t vwords = d1.words_per_col();
    std::vector<std::uint64_t> acc(vwords);
    for (std::size_t c = 0; c < S.triangles.size(); ++c) {
        const auto& t = S.triangles[c];
        const std::uint64_t* e01 = d1.column(detail::edge_index(S, t[0], t[1]));
        const std::uint64_t* e02 = d1.column(detail::edge_index(S, t[0], t[2]));
        const std::uint64_t* e12 = d1.column(detail::edge_index(S, t[1], t[2]));
        for (std::size_t w = 0; w < vwords; ++w) {
            acc[w] = e01[w] ^ e02[w] ^ e12[w];
            if (acc[w]) throw std::logic_error("betti: chain identity d1*d2 = 0 violated");
        }
    }

    const std::size_t r1 = gf2_rank(d1);
    const std::size_t r2 = gf2_rank(d2);
    BettiPair out;
    out.beta0 = static_cast<int>(S.vertices.size() - r1);
    out.beta1 = static_cast<int>(S.edges.size() - r1 - r2);
    return out;
}

}  // namespace kcov
