#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tdq/permutation.hpp"

namespace tdq {

// Ternary operation table on {0, ..., n-1}; entry (x, y, z) at flat index (x*n + y)*n + z.
class TernaryTable {
public:
    TernaryTable() = default;
    TernaryTable(int n, std::vector<int> entries) : n_(n), e_(std::move(entries)) {
        if (n < 0 || e_.size() != static_cast<size_t>(n) * n * n)
            throw std::invalid_argument("ternary table size mismatch");
        for (int v : e_)
            if (v < 0 || v >= n) throw std::invalid_argument("ternary table entry out of range");
    }
    static TernaryTable filled(int n, int value = 0) {
        return TernaryTable(n, std::vector<int>(static_cast<size_t>(n) * n * n, value));
    }

    int order() const { return n_; }
    int at(int x, int y, int z) const { return e_[(static_cast<size_t>(x) * n_ + y) * n_ + z]; }
    void set(int x, int y, int z, int v) { e_[(static_cast<size_t>(x) * n_ + y) * n_ + z] = v; }
    const std::vector<int>& entries() const { return e_; }

    friend bool operator==(const TernaryTable& a, const TernaryTable& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator<(const TernaryTable& a, const TernaryTable& b) {
        return a.n_ != b.n_ ? a.n_ < b.n_ : a.e_ < b.e_;
    }

private:
    int n_ = 0;
    std::vector<int> e_;
};

// Binary operation table; entry (x, y) at flat index x*n + y.
class BinaryTable {
public:
    BinaryTable() = default;
    BinaryTable(int n, std::vector<int> entries) : n_(n), e_(std::move(entries)) {
        if (n < 0 || e_.size() != static_cast<size_t>(n) * n)
            throw std::invalid_argument("binary table size mismatch");
        for (int v : e_)
            if (v < 0 || v >= n) throw std::invalid_argument("binary table entry out of range");
    }

    int order() const { return n_; }
    int at(int x, int y) const { return e_[static_cast<size_t>(x) * n_ + y]; }
    void set(int x, int y, int v) { e_[static_cast<size_t>(x) * n_ + y] = v; }
    const std::vector<int>& entries() const { return e_; }

    friend bool operator==(const BinaryTable& a, const BinaryTable& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator<(const BinaryTable& a, const BinaryTable& b) {
        return a.n_ != b.n_ ? a.n_ < b.n_ : a.e_ < b.e_;
    }

private:
    int n_ = 0;
    std::vector<int> e_;
};

// k-ary operation table; arguments flattened with the leftmost argument most significant.
class NaryTable {
public:
    NaryTable() = default;
    NaryTable(int arity, int n, std::vector<int> entries) : k_(arity), n_(n), e_(std::move(entries)) {
        if (arity < 1 || n < 0) throw std::invalid_argument("bad n-ary table shape");
        size_t want = 1;
        for (int i = 0; i < arity; ++i) want *= static_cast<size_t>(n);
        if (e_.size() != want) throw std::invalid_argument("n-ary table size mismatch");
        for (int v : e_)
            if (v < 0 || v >= n) throw std::invalid_argument("n-ary table entry out of range");
    }

    int arity() const { return k_; }
    int order() const { return n_; }
    int at(const std::vector<int>& args) const {
        if (static_cast<int>(args.size()) != k_) throw std::invalid_argument("arity mismatch");
        size_t idx = 0;
        for (int a : args) idx = idx * n_ + static_cast<size_t>(a);
        return e_[idx];
    }
    const std::vector<int>& entries() const { return e_; }

private:
    int k_ = 0;
    int n_ = 0;
    std::vector<int> e_;
};

// Finite group given by its multiplication table; identity and inverses are
// located during validation.
class FiniteGroup {
public:
    FiniteGroup() = default;

    static FiniteGroup from_table(int n, std::vector<int> mul) {
        FiniteGroup g;
        g.n_ = n;
        g.mul_ = std::move(mul);
        if (g.mul_.size() != static_cast<size_t>(n) * n)
            throw std::invalid_argument("group table size mismatch");
        for (int v : g.mul_)
            if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                        throw std::invalid_argument("group table not associative");
        g.e_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int a = 0; a < n; ++a)
                if (g.mul(e, a) != a || g.mul(a, e) != a) { ok = false; break; }
            if (ok) { g.e_ = e; break; }
        }
        if (g.e_ < 0) throw std::invalid_argument("group table has no identity");
        g.inv_.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                if (g.mul(a, b) == g.e_ && g.mul(b, a) == g.e_) { g.inv_[a] = b; break; }
            if (g.inv_[a] < 0) throw std::invalid_argument("group table element has no inverse");
        }
        return g;
    }

    static FiniteGroup cyclic(int n) {
        if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
        std::vector<int> m(static_cast<size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m[static_cast<size_t>(a) * n + b] = (a + b) % n;
        return from_table(n, std::move(m));
    }

    // Order 2k: indices 0..k-1 rotations r^i, k..2k-1 reflections s*r^i.
    static FiniteGroup dihedral(int k) {
        if (k < 1) throw std::invalid_argument("dihedral parameter must be positive");
        int n = 2 * k;
        auto enc = [&](int flip, int rot) { return flip * k + rot; };
        std::vector<int> m(static_cast<size_t>(n) * n);
        for (int f1 = 0; f1 < 2; ++f1)
            for (int r1 = 0; r1 < k; ++r1)
                for (int f2 = 0; f2 < 2; ++f2)
                    for (int r2 = 0; r2 < k; ++r2) {
                        // (s^f1 r^r1)(s^f2 r^r2) = s^(f1+f2) r^(r2 + (-1)^f2 r1)
                        int f = (f1 + f2) % 2;
                        int r = ((f2 ? k - r1 : r1) + r2) % k;
                        m[static_cast<size_t>(enc(f1, r1)) * n + enc(f2, r2)] = enc(f, r);
                    }
        return from_table(n, std::move(m));
    }

    // Elements are the permutations of {0..k-1} in lexicographic order.
    static FiniteGroup symmetric(int k) {
        auto perms = all_permutations(k);
        int n = static_cast<int>(perms.size());
        std::map<std::vector<int>, int> index;
        for (int i = 0; i < n; ++i) index[perms[i].images()] = i;
        std::vector<int> m(static_cast<size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                m[static_cast<size_t>(a) * n + b] = index[(perms[a] * perms[b]).images()];
        return from_table(n, std::move(m));
    }

    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
        int n = g.order() * h.order();
        std::vector<int> m(static_cast<size_t>(n) * n);
        auto enc = [&](int a, int b) { return a * h.order() + b; };
        for (int a1 = 0; a1 < g.order(); ++a1)
            for (int b1 = 0; b1 < h.order(); ++b1)
                for (int a2 = 0; a2 < g.order(); ++a2)
                    for (int b2 = 0; b2 < h.order(); ++b2)
                        m[static_cast<size_t>(enc(a1, b1)) * n + enc(a2, b2)] =
                            enc(g.mul(a1, a2), h.mul(b1, b2));
        return from_table(n, std::move(m));
    }

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return e_; }
    const std::vector<int>& table() const { return mul_; }

private:
    int n_ = 0;
    int e_ = -1;
    std::vector<int> mul_;
    std::vector<int> inv_;
};

// Axiom flags with retained counterexamples. Witness tuples list arguments in
// the order they appear in the violated identity.
struct StructureReport {
    bool is_shelf = false;
    bool is_rack = false;
    bool is_quandle = false;
    bool is_medial = false;
    std::optional<std::array<int, 5>> shelf_witness;   // (x,y,z,u,v)
    std::optional<std::array<int, 4>> rack_witness;    // (y,z,x1,x2) with T(x1,y,z)=T(x2,y,z)
    std::optional<int> idempotence_witness;            // x with T(x,x,x) != x
    std::optional<std::array<int, 9>> medial_witness;  // (a,b,c,d,e,f,g,h,k)
    std::vector<int> pointed_elements;                 // e with T(x,e,e)=x and T(e,x,y)=e
};

// Index shuffle (x1..x9) -> (x1,x4,x7,x2,x5,x8,x3,x6,x9): the transpose of the
// 3x3 argument grid. An involution.
template <class T>
std::array<T, 9> rho_permute(const std::array<T, 9>& v) {
    return {v[0], v[3], v[6], v[1], v[4], v[7], v[2], v[5], v[8]};
}

template <class T>
std::vector<T> rho_permute(const std::vector<T>& v) {
    if (v.size() != 9) throw std::invalid_argument("rho acts on 9-tuples");
    return {v[0], v[3], v[6], v[1], v[4], v[7], v[2], v[5], v[8]};
}

namespace detail {

inline std::optional<std::array<int, 5>> find_shelf_violation(const TernaryTable& t) {
    int n = t.order();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                int xyz = t.at(x, y, z);
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v)
                        if (t.at(xyz, u, v) !=
                            t.at(t.at(x, u, v), t.at(y, u, v), t.at(z, u, v)))
                            return std::array<int, 5>{x, y, z, u, v};
            }
    return std::nullopt;
}

inline std::optional<std::array<int, 4>> find_rack_violation(const TernaryTable& t) {
    int n = t.order();
    std::vector<int> hit(n);
    for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
            std::fill(hit.begin(), hit.end(), -1);
            for (int x = 0; x < n; ++x) {
                int v = t.at(x, y, z);
                if (hit[v] >= 0) return std::array<int, 4>{y, z, hit[v], x};
                hit[v] = x;
            }
        }
    return std::nullopt;
}

inline std::optional<std::array<int, 9>> medial_violation_plain(const TernaryTable& t) {
    int n = t.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int abc = t.at(a, b, c);
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f) {
                            int def = t.at(d, e, f);
                            for (int g = 0; g < n; ++g)
                                for (int h = 0; h < n; ++h)
                                    for (int k = 0; k < n; ++k)
                                        if (t.at(abc, def, t.at(g, h, k)) !=
                                            t.at(t.at(a, d, g), t.at(b, e, h), t.at(c, f, k)))
                                            return std::array<int, 9>{a, b, c, d, e, f, g, h, k};
                        }
            }
    return std::nullopt;
}

// Mediality states, for every triple of column maps (sigma1, sigma2, sigma3) =
// (R_{d,g}, R_{e,h}, R_{f,k}) and every (P, Q) = (T(d,e,f), T(g,h,k)) arising
// with it, that R_{P,Q} o T equals F(a,b,c) = T(sigma1 a, sigma2 b, sigma3 c).
// Grouping the n^6 outer tuples by those keys makes the check near-linear for
// tables with few distinct columns. Exact for every table.
inline std::optional<std::array<int, 9>> medial_violation_factored(const TernaryTable& t) {
    int n = t.order();
    int n3 = n * n * n;
    // Distinct column ids.
    std::map<std::vector<int>, int> col_ids;
    std::vector<int> col_of_pair(static_cast<size_t>(n) * n);
    std::vector<std::vector<int>> columns;
    for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
            std::vector<int> col(n);
            for (int x = 0; x < n; ++x) col[x] = t.at(x, y, z);
            auto [it, fresh] = col_ids.try_emplace(col, static_cast<int>(columns.size()));
            if (fresh) columns.push_back(col);
            col_of_pair[static_cast<size_t>(y) * n + z] = it->second;
        }
    int nc = static_cast<int>(columns.size());
    // Fall back to the plain loop when the key tables would not pay for themselves.
    size_t nkeys = static_cast<size_t>(nc) * nc * nc;
    if (nkeys * n * n > (size_t{64} << 20)) return medial_violation_plain(t);

    // Per sigma-triple: the fiber-collapsed map v -> F(a,b,c) on im(T), built on
    // first use (empty = not yet seen); -1 inside fhat marks "v not in image".
    std::vector<std::vector<int>> fhat(nkeys);
    // Seen (sigma-triple, P, Q) keys.
    std::vector<uint8_t> seen_pq(nkeys * n * n, 0);

    std::array<int, 9> w{};
    auto full_check = [&](const std::array<int, 6>& o) -> std::optional<std::array<int, 9>> {
        int P = t.at(o[0], o[1], o[2]), Q = t.at(o[3], o[4], o[5]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (t.at(t.at(a, b, c), P, Q) !=
                        t.at(t.at(a, o[0], o[3]), t.at(b, o[1], o[4]), t.at(c, o[2], o[5])))
                        return std::array<int, 9>{a, b, c, o[0], o[1], o[2], o[3], o[4], o[5]};
        return std::nullopt;
    };

    for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f) {
                int P = t.at(d, e, f);
                for (int g = 0; g < n; ++g) {
                    int s1 = col_of_pair[static_cast<size_t>(d) * n + g];
                    for (int h = 0; h < n; ++h) {
                        int s2 = col_of_pair[static_cast<size_t>(e) * n + h];
                        for (int k = 0; k < n; ++k) {
                            int s3 = col_of_pair[static_cast<size_t>(f) * n + k];
                            int Q = t.at(g, h, k);
                            size_t skey = (static_cast<size_t>(s1) * nc + s2) * nc + s3;
                            std::array<int, 6> outer{d, e, f, g, h, k};
                            if (fhat[skey].empty()) {
                                // Build fhat and check constancy on T-fibers.
                                std::vector<int> fh(n, -1);
                                const auto& c1 = columns[s1];
                                const auto& c2 = columns[s2];
                                const auto& c3 = columns[s3];
                                for (int a = 0; a < n; ++a)
                                    for (int b = 0; b < n; ++b)
                                        for (int c = 0; c < n; ++c) {
                                            int v = t.at(a, b, c);
                                            int rhs = t.at(c1[a], c2[b], c3[c]);
                                            if (fh[v] == -1) fh[v] = rhs;
                                            else if (fh[v] != rhs) return full_check(outer);
                                        }
                                fhat[skey] = std::move(fh);
                            }
                            size_t pqkey = (skey * n + P) * n + Q;
                            if (!seen_pq[pqkey]) {
                                seen_pq[pqkey] = 1;
                                const auto& fh = fhat[skey];
                                for (int v = 0; v < n; ++v)
                                    if (fh[v] != -1 && t.at(v, P, Q) != fh[v]) {
                                        // Recover (a,b,c) hitting value v.
                                        for (int a = 0; a < n; ++a)
                                            for (int b = 0; b < n; ++b)
                                                for (int c = 0; c < n; ++c)
                                                    if (t.at(a, b, c) == v)
                                                        return std::array<int, 9>{a, b, c, d, e,
                                                                                  f, g, h, k};
                                    }
                            }
                        }
                    }
                }
            }
    return std::nullopt;
}

inline std::optional<std::array<int, 9>> find_medial_violation(const TernaryTable& t) {
    if (t.order() <= 4) return medial_violation_plain(t);
    return medial_violation_factored(t);
}

} // namespace detail

inline StructureReport classify_structure(const TernaryTable& t) {
    StructureReport r;
    int n = t.order();
    r.shelf_witness = detail::find_shelf_violation(t);
    r.is_shelf = !r.shelf_witness.has_value();
    r.rack_witness = detail::find_rack_violation(t);
    r.is_rack = r.is_shelf && !r.rack_witness.has_value();
    for (int x = 0; x < n && !r.idempotence_witness; ++x)
        if (t.at(x, x, x) != x) r.idempotence_witness = x;
    r.is_quandle = r.is_rack && !r.idempotence_witness.has_value();
    r.medial_witness = detail::find_medial_violation(t);
    r.is_medial = !r.medial_witness.has_value();
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            if (t.at(x, e, e) != x) ok = false;
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
                if (t.at(e, x, y) != e) ok = false;
        if (ok) r.pointed_elements.push_back(e);
    }
    return r;
}

inline bool is_binary_quandle(const BinaryTable& b) {
    int n = b.order();
    for (int x = 0; x < n; ++x)
        if (b.at(x, x) != x) return false;
    std::vector<bool> hit(n);
    for (int y = 0; y < n; ++y) {
        std::fill(hit.begin(), hit.end(), false);
        for (int x = 0; x < n; ++x) {
            int v = b.at(x, y);
            if (hit[v]) return false;
            hit[v] = true;
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (b.at(b.at(x, y), z) != b.at(b.at(x, z), b.at(y, z))) return false;
    return true;
}

// x * y = T(x, y, y).
inline BinaryTable associated_quandle(const TernaryTable& t) {
    int n = t.order();
    BinaryTable b(n, std::vector<int>(static_cast<size_t>(n) * n, 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) b.set(x, y, t.at(x, y, y));
    return b;
}

// T(x, y, z) = (x * y) * z; requires a binary quandle.
inline TernaryTable induced_from_binary(const BinaryTable& b) {
    if (!is_binary_quandle(b)) throw std::invalid_argument("induced_from_binary needs a binary quandle");
    int n = b.order();
    TernaryTable t = TernaryTable::filled(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) t.set(x, y, z, b.at(b.at(x, y), z));
    return t;
}

// T(x, y, z) = t*x + s*y + (1 - t - s)*z mod n.
inline TernaryTable affine_ternary(int n, int t, int s) {
    if (n < 1) throw std::invalid_argument("affine order must be positive");
    auto norm = [&](long long v) { return static_cast<int>(((v % n) + n) % n); };
    TernaryTable tab = TernaryTable::filled(n);
    int u = norm(1LL - t - s);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                tab.set(x, y, z, norm(1LL * t * x + 1LL * s * y + 1LL * u * z));
    return tab;
}

// T(x, y, z) = x y^{-1} z.
inline TernaryTable heap(const FiniteGroup& g) {
    int n = g.order();
    TernaryTable t = TernaryTable::filled(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) t.set(x, y, z, g.mul(g.mul(x, g.inv(y)), z));
    return t;
}

// k-ary distributivity: T(T(x_1..x_k), u_1..u_{k-1}) =
// T(T(x_1, u_vec), ..., T(x_k, u_vec)) over all n^(2k-1) argument tuples.
inline bool nary_is_distributive(const NaryTable& m) {
    if (m.arity() < 2) throw std::invalid_argument("distributivity needs arity >= 2");
    int k = m.arity(), n = m.order();
    if (n == 0) return true;
    std::vector<int> xs(k, 0), us(k - 1, 0);
    auto advance = [n](std::vector<int>& v) {
        for (size_t i = v.size(); i-- > 0;) {
            if (++v[i] < n) return true;
            v[i] = 0;
        }
        return false;
    };
    std::vector<int> args(k), inner(k);
    do {
        std::fill(us.begin(), us.end(), 0);
        do {
            args[0] = m.at(xs);
            std::copy(us.begin(), us.end(), args.begin() + 1);
            int lhs = m.at(args);
            for (int i = 0; i < k; ++i) {
                args[0] = xs[i];
                inner[i] = m.at(args);
            }
            if (m.at(inner) != lhs) return false;
        } while (advance(us));
    } while (advance(xs));
    return true;
}

} // namespace tdq
