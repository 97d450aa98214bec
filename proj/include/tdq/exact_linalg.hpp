#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tdq/linear_map.hpp"
#include "tdq/rational.hpp"

namespace tdq {

using DenseMatrix = std::vector<std::vector<Rational>>;

inline DenseMatrix to_dense_matrix(const LinearMap& m) { return m.dense(); }

// Exact rank via fraction-free integer elimination: rows are rescaled to
// integers, then eliminated by cross-multiplication with per-row content
// (gcd) stripping to keep growth down. Rank over the rationals equals rank
// over the integers.
inline int rank_fraction_free(const DenseMatrix& input) {
    int rows = static_cast<int>(input.size());
    int cols = rows ? static_cast<int>(input[0].size()) : 0;
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols));
    for (int i = 0; i < rows; ++i) {
        BigInt scale = 1;
        for (int j = 0; j < cols; ++j)
            scale = boost::multiprecision::lcm(scale, rat_den(input[i][j]));
        for (int j = 0; j < cols; ++j) m[i][j] = rat_num(input[i][j] * Rational(scale));
    }
    auto strip_content = [cols](std::vector<BigInt>& row) {
        BigInt g = 0;
        for (int j = 0; j < cols; ++j) g = boost::multiprecision::gcd(g, row[j]);
        if (g > 1)
            for (int j = 0; j < cols; ++j) row[j] /= g;
    };
    int rank = 0;
    for (int pc = 0; pc < cols && rank < rows; ++pc) {
        int pr = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][pc] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[rank], m[pr]);
        const std::vector<BigInt> pivot_row = m[rank];
        const BigInt& p = pivot_row[pc];
        for (int i = rank + 1; i < rows; ++i) {
            if (m[i][pc] == 0) continue;
            BigInt f = m[i][pc];
            for (int j = pc; j < cols; ++j) m[i][j] = m[i][j] * p - f * pivot_row[j];
            strip_content(m[i]);
        }
        ++rank;
    }
    return rank;
}

inline int rank_of(const LinearMap& m) { return rank_fraction_free(m.dense()); }

// Exact rank of a sparse map without densifying. Rows are reduced one at a
// time against previously found pivot rows, kept normalized over the
// rationals; shortest rows are processed first to limit fill-in. Suited to
// the very sparse matrices produced by differential assembly, where dense
// elimination would be quadratically wasteful.
inline int rank_sparse(const LinearMap& m) {
    using SparseRow = std::vector<std::pair<int, Rational>>; // sorted by column
    std::vector<SparseRow> rows(m.rows());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c)) rows[e.row].emplace_back(c, e.value);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
    std::map<int, SparseRow> pivots; // leading column -> row normalized to lead 1
    for (auto& row : rows) {
        SparseRow cur = std::move(row);
        while (!cur.empty()) {
            auto it = pivots.find(cur.front().first);
            if (it == pivots.end()) {
                Rational inv = Rational(1) / cur.front().second;
                for (auto& [c, v] : cur) v *= inv;
                pivots.emplace(cur.front().first, std::move(cur));
                break;
            }
            const SparseRow& p = it->second;
            const Rational f = cur.front().second; // pivot lead is 1
            SparseRow next;
            next.reserve(cur.size() + p.size());
            size_t i = 1, j = 1; // both leads cancel by construction
            while (i < cur.size() || j < p.size()) {
                if (j >= p.size() || (i < cur.size() && cur[i].first < p[j].first)) {
                    next.push_back(cur[i++]);
                } else if (i >= cur.size() || p[j].first < cur[i].first) {
                    next.emplace_back(p[j].first, -f * p[j].second);
                    ++j;
                } else {
                    Rational v = cur[i].second - f * p[j].second;
                    if (v != 0) next.emplace_back(cur[i].first, v);
                    ++i, ++j;
                }
            }
            cur = std::move(next);
        }
    }
    return static_cast<int>(pivots.size());
}

struct RrefResult {
    int rank = 0;
    std::vector<int> pivot_cols;
};

// In-place reduced row echelon form over the rationals.
inline RrefResult rref_in_place(DenseMatrix& m) {
    RrefResult res;
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int pc = 0; pc < cols && r < rows; ++pc) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][pc] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        Rational inv = Rational(1) / m[r][pc];
        for (int j = pc; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][pc] == 0) continue;
            Rational f = m[i][pc];
            for (int j = pc; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        res.pivot_cols.push_back(pc);
        ++r;
    }
    res.rank = r;
    return res;
}

// Basis of the null space {x : Mx = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_basis(const DenseMatrix& input) {
    DenseMatrix m = input;
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    RrefResult res = rref_in_place(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : res.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[fc] = Rational(1);
        for (int r = 0; r < res.rank; ++r) v[res.pivot_cols[r]] = -m[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<std::vector<Rational>> kernel_basis(const LinearMap& m) {
    return kernel_basis(m.dense());
}

// One solution of Ax = b (free variables set to zero), or nullopt.
inline std::optional<std::vector<Rational>> solve(const DenseMatrix& a,
                                                  const std::vector<Rational>& b) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("solve size mismatch");
    DenseMatrix aug(rows, std::vector<Rational>(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    RrefResult res = rref_in_place(aug);
    for (int c : res.pivot_cols)
        if (c == cols) return std::nullopt; // inconsistent system
    std::vector<Rational> x(cols, Rational(0));
    for (int r = 0; r < res.rank; ++r) x[res.pivot_cols[r]] = aug[r][cols];
    return x;
}

inline std::optional<std::vector<Rational>> solve(const LinearMap& a,
                                                  const std::vector<Rational>& b) {
    return solve(a.dense(), b);
}

} // namespace tdq
