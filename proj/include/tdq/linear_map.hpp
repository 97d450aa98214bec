#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdq/rational.hpp"

namespace tdq {

// Sparse exact-rational linear map K^cols -> K^rows. Entries are stored per
// column, sorted by row, with no explicit zeros. Tensor-power bases are
// ordered lexicographically with the leftmost factor most significant, so the
// basis vector e_{i1} x e_{i2} x ... x e_{ik} of (K^d)^{tensor k} has flat
// index ((i1*d + i2)*d + ...)*d + ik.
class LinearMap {
public:
    LinearMap(int rows, int cols) : rows_(rows), cols_(cols), col_entries_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
    }

    static LinearMap zero(int rows, int cols) { return LinearMap(rows, cols); }

    static LinearMap identity(int n) {
        LinearMap m(n, n);
        for (int i = 0; i < n; ++i) m.col_entries_[i].push_back({i, Rational(1)});
        return m;
    }

    static LinearMap from_dense(const std::vector<std::vector<Rational>>& d) {
        int r = static_cast<int>(d.size());
        int c = r ? static_cast<int>(d[0].size()) : 0;
        LinearMap m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(d[i].size()) != c)
                throw std::invalid_argument("ragged dense matrix");
            for (int j = 0; j < c; ++j)
                if (d[i][j] != 0) m.add(i, j, d[i][j]);
        }
        return m;
    }

    // The map sending basis vector j to basis vector image[j].
    static LinearMap basis_permutation(const std::vector<int>& image) {
        int n = static_cast<int>(image.size());
        LinearMap m(n, n);
        for (int j = 0; j < n; ++j) {
            if (image[j] < 0 || image[j] >= n) throw std::invalid_argument("bad basis image");
            m.col_entries_[j].push_back({image[j], Rational(1)});
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, const Rational& v) {
        check_index(r, c);
        if (v == 0) return;
        auto& col = col_entries_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, int row) { return e.row < row; });
        if (it != col.end() && it->row == r) {
            it->value += v;
            if (it->value == 0) col.erase(it);
        } else {
            col.insert(it, {r, v});
        }
    }

    void set(int r, int c, const Rational& v) {
        check_index(r, c);
        auto& col = col_entries_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, int row) { return e.row < row; });
        if (it != col.end() && it->row == r) {
            if (v == 0)
                col.erase(it);
            else
                it->value = v;
        } else if (v != 0) {
            col.insert(it, {r, v});
        }
    }

    Rational at(int r, int c) const {
        check_index(r, c);
        const auto& col = col_entries_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, int row) { return e.row < row; });
        if (it != col.end() && it->row == r) return it->value;
        return Rational(0);
    }

    bool is_zero() const {
        for (const auto& col : col_entries_)
            if (!col.empty()) return false;
        return true;
    }

    size_t nonzero_count() const {
        size_t n = 0;
        for (const auto& col : col_entries_) n += col.size();
        return n;
    }

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (int c = 0; c < a.cols_; ++c) {
            if (a.col_entries_[c].size() != b.col_entries_[c].size()) return false;
            for (size_t k = 0; k < a.col_entries_[c].size(); ++k) {
                if (a.col_entries_[c][k].row != b.col_entries_[c][k].row) return false;
                if (a.col_entries_[c][k].value != b.col_entries_[c][k].value) return false;
            }
        }
        return true;
    }
    friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

    // Composition: (*this) after other.
    LinearMap operator*(const LinearMap& other) const {
        if (cols_ != other.rows_)
            throw std::invalid_argument("composition shape mismatch: " + shape() + " * " +
                                        other.shape());
        LinearMap out(rows_, other.cols_);
        std::vector<Rational> acc(rows_, Rational(0));
        std::vector<int> touched;
        for (int j = 0; j < other.cols_; ++j) {
            touched.clear();
            for (const Entry& e : other.col_entries_[j]) {
                for (const Entry& f : col_entries_[e.row]) {
                    if (acc[f.row] == 0) touched.push_back(f.row);
                    acc[f.row] += f.value * e.value;
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int r : touched) {
                if (acc[r] != 0) out.col_entries_[j].push_back({r, acc[r]});
                acc[r] = Rational(0);
            }
        }
        return out;
    }

    LinearMap operator+(const LinearMap& other) const { return combined(other, Rational(1)); }
    LinearMap operator-(const LinearMap& other) const { return combined(other, Rational(-1)); }

    LinearMap scaled(const Rational& s) const {
        LinearMap out(rows_, cols_);
        if (s == 0) return out;
        out.col_entries_ = col_entries_;
        for (auto& col : out.col_entries_)
            for (auto& e : col) e.value *= s;
        return out;
    }
    LinearMap operator-() const { return scaled(Rational(-1)); }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply size mismatch");
        std::vector<Rational> out(rows_, Rational(0));
        for (int j = 0; j < cols_; ++j) {
            if (v[j] == 0) continue;
            for (const Entry& e : col_entries_[j]) out[e.row] += e.value * v[j];
        }
        return out;
    }

    // Column-major flattening: index c*rows + r.
    std::vector<Rational> vec() const {
        std::vector<Rational> out(static_cast<size_t>(rows_) * cols_, Rational(0));
        for (int j = 0; j < cols_; ++j)
            for (const Entry& e : col_entries_[j])
                out[static_cast<size_t>(j) * rows_ + e.row] = e.value;
        return out;
    }

    static LinearMap from_vec(int rows, int cols, const std::vector<Rational>& v) {
        if (static_cast<long long>(rows) * cols != static_cast<long long>(v.size()))
            throw std::invalid_argument("from_vec size mismatch");
        LinearMap m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int r = 0; r < rows; ++r) {
                const Rational& x = v[static_cast<size_t>(j) * rows + r];
                if (x != 0) m.col_entries_[j].push_back({r, x});
            }
        return m;
    }

    std::vector<std::vector<Rational>> dense() const {
        std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_, Rational(0)));
        for (int j = 0; j < cols_; ++j)
            for (const Entry& e : col_entries_[j]) d[e.row][j] = e.value;
        return d;
    }

    struct Entry {
        int row;
        Rational value;
    };
    const std::vector<Entry>& column(int c) const { return col_entries_[c]; }

    std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    int rows_, cols_;
    std::vector<std::vector<Entry>> col_entries_;

    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("linear map index out of range");
    }

    LinearMap combined(const LinearMap& other, const Rational& sign) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("sum shape mismatch: " + shape() + " vs " + other.shape());
        LinearMap out(rows_, cols_);
        for (int j = 0; j < cols_; ++j) {
            const auto& a = col_entries_[j];
            const auto& b = other.col_entries_[j];
            size_t i = 0, k = 0;
            auto& col = out.col_entries_[j];
            while (i < a.size() || k < b.size()) {
                if (k == b.size() || (i < a.size() && a[i].row < b[k].row)) {
                    col.push_back(a[i++]);
                } else if (i == a.size() || b[k].row < a[i].row) {
                    col.push_back({b[k].row, sign * b[k].value});
                    ++k;
                } else {
                    Rational v = a[i].value + sign * b[k].value;
                    if (v != 0) col.push_back({a[i].row, v});
                    ++i;
                    ++k;
                }
            }
        }
        return out;
    }
};

// Tensor (Kronecker) product; the left factor is most significant in both the
// row and the column index.
inline LinearMap kron(const LinearMap& a, const LinearMap& b) {
    long long rr = static_cast<long long>(a.rows()) * b.rows();
    long long cc = static_cast<long long>(a.cols()) * b.cols();
    if (rr > 1 << 24 || cc > 1 << 24) throw std::invalid_argument("tensor product too large");
    LinearMap out(static_cast<int>(rr), static_cast<int>(cc));
    for (int ja = 0; ja < a.cols(); ++ja)
        for (const auto& ea : a.column(ja))
            for (int jb = 0; jb < b.cols(); ++jb)
                for (const auto& eb : b.column(jb))
                    out.add(ea.row * b.rows() + eb.row, ja * b.cols() + jb, ea.value * eb.value);
    return out;
}

inline LinearMap kron3(const LinearMap& a, const LinearMap& b, const LinearMap& c) {
    return kron(kron(a, b), c);
}

inline int pow_int(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > (1LL << 30)) throw std::invalid_argument("dimension overflow");
    }
    return static_cast<int>(r);
}

// Action of the nine-factor transpose permutation on a single tensor index
// (digits of idx in base d, leftmost factor most significant).
inline int rho_index(int idx, int d) {
    static const int kRho[9] = {0, 3, 6, 1, 4, 7, 2, 5, 8};
    int digits[9];
    int x = idx;
    for (int p = 8; p >= 0; --p) {
        digits[p] = x % d;
        x /= d;
    }
    int out = 0;
    for (int p = 0; p < 9; ++p) out = out * d + digits[kRho[p]];
    return out;
}

// The fixed permutation of nine tensor factors (the transpose of a 3x3 grid
// of indices) as a matrix on (K^d)^{tensor 9}: factor j of the output is
// factor rho(j) of the input, with rho = (0,3,6,1,4,7,2,5,8).
inline LinearMap rho_map(int d) {
    int n = pow_int(d, 9);
    std::vector<int> image(n);
    for (int j = 0; j < n; ++j) image[j] = rho_index(j, d);
    return LinearMap::basis_permutation(image);
}

// P_rho composed after m (i.e. rho_map(d) * m) computed by relabeling rows,
// without materializing the d^9 x d^9 permutation. m must have d^9 rows.
inline LinearMap rho_rows(const LinearMap& m, int d) {
    if (m.rows() != pow_int(d, 9)) throw std::invalid_argument("rho_rows: row count is not d^9");
    LinearMap out(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c)) out.add(rho_index(e.row, d), c, e.value);
    return out;
}

// kron3(a, b, c) * m computed lazily: columns of the Kronecker product are
// expanded only at the indices m actually touches. Avoids materializing
// products with huge column counts.
inline LinearMap kron3_compose(const LinearMap& a, const LinearMap& b, const LinearMap& c,
                               const LinearMap& m) {
    long long kc = static_cast<long long>(a.cols()) * b.cols() * c.cols();
    long long kr = static_cast<long long>(a.rows()) * b.rows() * c.rows();
    if (kc != m.rows()) throw std::invalid_argument("kron3_compose shape mismatch");
    if (kr > 1 << 24) throw std::invalid_argument("kron3_compose result too large");
    LinearMap out(static_cast<int>(kr), m.cols());
    for (int col = 0; col < m.cols(); ++col)
        for (const auto& e : m.column(col)) {
            int r = e.row;
            int jc = r % c.cols();
            r /= c.cols();
            int jb = r % b.cols();
            int ja = r / b.cols();
            for (const auto& ea : a.column(ja))
                for (const auto& eb : b.column(jb))
                    for (const auto& ec : c.column(jc))
                        out.add((ea.row * b.rows() + eb.row) * c.rows() + ec.row, col,
                                e.value * ea.value * eb.value * ec.value);
        }
    return out;
}

} // namespace tdq
