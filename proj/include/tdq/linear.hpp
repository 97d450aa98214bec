#pragma once
// Exact-arithmetic layer over the rationals: ternary coalgebras and
// bialgebras, the structural identity checks (associativity, coassociativity,
// compatibility, linear distributivity), linearization of finite tables, the
// unit-adjoined construction, 3-Lie algebras with their induced bialgebras,
// and the exhaustive classification of distributive maps on a two-dimensional
// group-like coalgebra.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tdq/core.hpp"
#include "tdq/linear_map.hpp"

namespace tdq {

// A ternary coalgebra on K^dim: delta splits one tensor factor into three,
// epsilon evaluates basis vectors to scalars. Structural properties are
// computed on demand by check_coassoc, never stored.
struct Coalgebra {
    int dim = 0;
    LinearMap delta;   // dim^3 x dim
    LinearMap epsilon; // 1 x dim

    Coalgebra(int d, LinearMap delta_, LinearMap epsilon_)
        : dim(d), delta(std::move(delta_)), epsilon(std::move(epsilon_)) {
        if (dim <= 0) throw std::invalid_argument("coalgebra dimension must be positive");
        if (delta.rows() != pow_int(dim, 3) || delta.cols() != dim)
            throw std::invalid_argument("delta must have shape dim^3 x dim");
        if (epsilon.rows() != 1 || epsilon.cols() != dim)
            throw std::invalid_argument("epsilon must have shape 1 x dim");
    }
};

// Ternary multiplication T : A^{x3} -> A together with a coalgebra on the
// same space. eta (a distinguished vector K -> A) is optional; when present
// the unit laws are reported by check_ternary_assoc.
struct TernaryBialgebra {
    int dim = 0;
    LinearMap T; // dim x dim^3
    Coalgebra coalgebra;
    std::optional<LinearMap> eta; // dim x 1

    TernaryBialgebra(int d, LinearMap t, Coalgebra c, std::optional<LinearMap> unit = std::nullopt)
        : dim(d), T(std::move(t)), coalgebra(std::move(c)), eta(std::move(unit)) {
        if (T.rows() != dim || T.cols() != pow_int(dim, 3))
            throw std::invalid_argument("T must have shape dim x dim^3");
        if (coalgebra.dim != dim) throw std::invalid_argument("coalgebra dimension mismatch");
        if (eta && (eta->rows() != dim || eta->cols() != 1))
            throw std::invalid_argument("eta must have shape dim x 1");
    }
};

struct AssocReport {
    bool total = false; // all three bracket placements agree
    bool weak = false;  // outer placements agree
    // All three unit insertions agree and recover the identity; reported only
    // when a unit was supplied.
    std::optional<bool> unit_laws;
};

struct CoassocReport {
    bool total = false;    // all three splitting placements agree
    bool weak = false;     // outer placements agree
    bool counital = false; // double contractions against epsilon recover the identity
};

inline AssocReport check_ternary_assoc(const LinearMap& mu,
                                       const std::optional<LinearMap>& eta = std::nullopt) {
    int d = mu.rows();
    if (mu.cols() != pow_int(d, 3)) throw std::invalid_argument("mu must have shape d x d^3");
    LinearMap id = LinearMap::identity(d);
    LinearMap left = mu * kron3(mu, id, id);
    LinearMap middle = mu * kron3(id, mu, id);
    LinearMap right = mu * kron3(id, id, mu);
    AssocReport rep;
    rep.weak = left == right;
    rep.total = rep.weak && left == middle;
    if (eta) {
        if (eta->rows() != d || eta->cols() != 1)
            throw std::invalid_argument("eta must have shape d x 1");
        LinearMap u1 = mu * kron3(*eta, *eta, id);
        LinearMap u2 = mu * kron3(*eta, id, *eta);
        LinearMap u3 = mu * kron3(id, *eta, *eta);
        rep.unit_laws = u1 == id && u2 == id && u3 == id;
    }
    return rep;
}

inline CoassocReport check_coassoc(const Coalgebra& c) {
    int d = c.dim;
    LinearMap id = LinearMap::identity(d);
    LinearMap left = kron3(c.delta, id, id) * c.delta;
    LinearMap middle = kron3(id, c.delta, id) * c.delta;
    LinearMap right = kron3(id, id, c.delta) * c.delta;
    CoassocReport rep;
    rep.weak = left == right;
    rep.total = rep.weak && left == middle;
    LinearMap e1 = kron3(c.epsilon, c.epsilon, id) * c.delta;
    LinearMap e2 = kron3(c.epsilon, id, c.epsilon) * c.delta;
    LinearMap e3 = kron3(id, c.epsilon, c.epsilon) * c.delta;
    rep.counital = e1 == id && e2 == id && e3 == id;
    return rep;
}

// delta . T == (T x T x T) . P_rho . (delta x delta x delta) as matrices.
inline bool check_compatibility(const LinearMap& T, const Coalgebra& c) {
    int d = c.dim;
    if (T.rows() != d || T.cols() != pow_int(d, 3))
        throw std::invalid_argument("T must have shape d x d^3");
    LinearMap lhs = c.delta * T;
    LinearMap rhs = kron3_compose(T, T, T, rho_rows(kron3(c.delta, c.delta, c.delta), d));
    return lhs == rhs;
}

// T . (T x id x id) == T . (T x T x T) . P_rho . (id x id x id x delta x delta).
inline bool check_linear_distributive(const LinearMap& T, const Coalgebra& c) {
    int d = c.dim;
    if (T.rows() != d || T.cols() != pow_int(d, 3))
        throw std::invalid_argument("T must have shape d x d^3");
    LinearMap id = LinearMap::identity(d);
    LinearMap lhs = T * kron3(T, id, id);
    LinearMap inner = rho_rows(kron3(LinearMap::identity(pow_int(d, 3)), c.delta, c.delta), d);
    LinearMap rhs = T * kron3_compose(T, T, T, inner);
    return lhs == rhs;
}

// The comultiplication that copies every basis vector into its own triple,
// with the all-ones counit.
inline Coalgebra group_like_coalgebra(int n) {
    LinearMap delta(pow_int(n, 3), n);
    LinearMap eps(1, n);
    for (int x = 0; x < n; ++x) {
        delta.add((x * n + x) * n + x, x, Rational(1));
        eps.set(0, x, Rational(1));
    }
    return Coalgebra(n, std::move(delta), std::move(eps));
}

// The convolution-style comultiplication on the function space of a finite
// group: the basis vector at h splits into the sum of u x v x w over all
// factorizations u v w = h; the counit evaluates at the group identity.
inline Coalgebra function_algebra_coalgebra(const FiniteGroup& g) {
    int n = g.order();
    LinearMap delta(pow_int(n, 3), n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                delta.add((u * n + v) * n + w, g.mul(g.mul(u, v), w), Rational(1));
    LinearMap eps(1, n);
    eps.set(0, g.identity(), Rational(1));
    return Coalgebra(n, std::move(delta), std::move(eps));
}

// K^order with the table as a basis-level multiplication, the group-like
// comultiplication, and the all-ones counit. Requires a distributive table.
inline TernaryBialgebra linearize_set(const TernaryTable& t) {
    StructureReport rep = classify_structure(t);
    if (!rep.is_shelf) throw std::invalid_argument("linearize_set requires a distributive table");
    int n = t.order();
    LinearMap T(n, pow_int(n, 3));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) T.add(t.at(x, y, z), (x * n + y) * n + z, Rational(1));
    return TernaryBialgebra(n, std::move(T), group_like_coalgebra(n));
}

// Result of adjoining a unit line to a linearized table: the bialgebra on
// K (+) K[X] (basis index 0 is the distinguished vector), plus the exact
// failures of the two identities that do not survive the extension.
//
// counit_defect is (eps . q) - (eps x eps x eps); it vanishes on pure set
// triples and on the one mixed pattern the multiplication sends to the
// distinguished vector, and is -1 on every other mixed triple.
//
// distributive_defect is LHS - RHS of the distributivity identity. The
// extension is compatible with the comultiplication but NOT distributive:
// on 5-tuples (1, 1, z, 1, v) with z, v set elements the left side is
// q(q(1,1,z) x 1 x v) = q(1 x 1 x v) = 1 while the right side vanishes
// (its inner factors q(1,1,v), q(1,1,v), q(z,1,v) end in q(1 x 1 x 0) = 0).
// The defect is +1 on the distinguished row at exactly those n^2 columns,
// for every base table.
struct AugmentedResult {
    TernaryBialgebra bialgebra;
    LinearMap counit_defect;       // 1 x (order+1)^3
    LinearMap distributive_defect; // (order+1) x (order+1)^5
    bool counit_compatible = false;
    bool distributive = false;
};

inline AugmentedResult augmented_construction(const TernaryTable& t) {
    StructureReport rep = classify_structure(t);
    if (!rep.is_shelf)
        throw std::invalid_argument("augmented_construction requires a distributive table");
    int n = t.order();
    int w = n + 1; // basis: 0 = distinguished vector, 1..n = set elements
    LinearMap q(w, pow_int(w, 3));
    for (int u = 0; u < w; ++u)
        for (int v = 0; v < w; ++v)
            for (int z = 0; z < w; ++z) {
                int col = (u * w + v) * w + z;
                if (u > 0 && v > 0 && z > 0)
                    q.add(t.at(u - 1, v - 1, z - 1) + 1, col, Rational(1));
                else if (u == 0 && v == 0 && z > 0)
                    q.add(0, col, Rational(1));
                // every other mixed triple (including the pure distinguished
                // triple) multiplies to zero
            }
    Coalgebra coalg = group_like_coalgebra(w);
    LinearMap counit_defect =
        coalg.epsilon * q - kron3(coalg.epsilon, coalg.epsilon, coalg.epsilon);
    LinearMap id = LinearMap::identity(w);
    LinearMap lhs = q * kron3(q, id, id);
    LinearMap inner = rho_rows(kron3(LinearMap::identity(pow_int(w, 3)), coalg.delta, coalg.delta), w);
    LinearMap dist_defect = lhs - q * kron3_compose(q, q, q, inner);
    bool counit_ok = counit_defect.is_zero();
    bool dist_ok = dist_defect.is_zero();
    return AugmentedResult{TernaryBialgebra(w, std::move(q), std::move(coalg)),
                           std::move(counit_defect), std::move(dist_defect), counit_ok, dist_ok};
}

// A totally antisymmetric ternary bracket on K^dim satisfying the ternary
// Jacobi (fundamental) identity
//   [[x1,x2,x3],x4,x5] = [[x1,x4,x5],x2,x3] + [x1,[x2,x4,x5],x3]
//                        + [x1,x2,[x3,x4,x5]].
struct ThreeLieDefect {
    std::string kind;            // "antisymmetry" or "fundamental"
    std::array<int, 5> tuple{};  // basis indices of the failing instance (-1 pads)
    int component = -1;          // output coordinate where the sides differ
    std::string description;
};

struct ThreeLieAlgebra {
    int dim = 0;
    std::vector<Rational> c; // c[((i*dim + j)*dim + k)*dim + l] = coeff of e_l in [e_i,e_j,e_k]

    const Rational& coeff(int i, int j, int k, int l) const {
        return c[static_cast<size_t>(((i * dim + j) * dim + k)) * dim + l];
    }

    // Brackets on ascending triples i<j<k, each given as the coefficient
    // vector of [e_i,e_j,e_k]; all other values follow by antisymmetry.
    // Validates the fundamental identity and throws on failure.
    static ThreeLieAlgebra from_brackets(
        int dim, const std::vector<std::pair<std::array<int, 3>, std::vector<Rational>>>& brackets) {
        ThreeLieAlgebra out = from_brackets_unchecked(dim, brackets);
        if (auto defect = out.validate())
            throw std::invalid_argument("not a 3-Lie algebra: " + defect->description);
        return out;
    }

    // Same input shape, no validation: use validate() to inspect defects.
    static ThreeLieAlgebra from_brackets_unchecked(
        int dim, const std::vector<std::pair<std::array<int, 3>, std::vector<Rational>>>& brackets) {
        if (dim <= 0) throw std::invalid_argument("dimension must be positive");
        ThreeLieAlgebra out;
        out.dim = dim;
        out.c.assign(static_cast<size_t>(pow_int(dim, 4)), Rational(0));
        for (const auto& [triple, coeffs] : brackets) {
            auto [i, j, k] = triple;
            if (!(0 <= i && i < j && j < k && k < dim))
                throw std::invalid_argument("bracket triples must be ascending basis indices");
            if (static_cast<int>(coeffs.size()) != dim)
                throw std::invalid_argument("bracket coefficient vector has wrong length");
            // spread over all six orderings with the permutation sign
            static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                            {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
            static const int signs[6] = {1, 1, 1, -1, -1, -1};
            int idx[3] = {i, j, k};
            for (int p = 0; p < 6; ++p) {
                int a = idx[perms[p][0]], b = idx[perms[p][1]], d3 = idx[perms[p][2]];
                for (int l = 0; l < dim; ++l)
                    out.c[static_cast<size_t>(((a * dim + b) * dim + d3)) * dim + l] =
                        coeffs[l] * Rational(signs[p]);
            }
        }
        return out;
    }

    static ThreeLieAlgebra abelian(int dim) { return from_brackets_unchecked(dim, {}); }

    // Four-dimensional algebra with [e_i,e_j,e_k] = sign(i,j,k,l) e_l, the
    // totally antisymmetric symbol on the complementary index.
    static ThreeLieAlgebra levi_civita_4() {
        auto unit = [](int l, const Rational& s) {
            std::vector<Rational> v(4, Rational(0));
            v[l] = s;
            return v;
        };
        return from_brackets(4, {
                                    {{0, 1, 2}, unit(3, Rational(1))},
                                    {{0, 1, 3}, unit(2, Rational(-1))},
                                    {{0, 2, 3}, unit(1, Rational(1))},
                                    {{1, 2, 3}, unit(0, Rational(-1))},
                                });
    }

    std::optional<ThreeLieDefect> validate() const {
        // antisymmetry under the two adjacent transpositions generates S3
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    for (int l = 0; l < dim; ++l) {
                        if (coeff(i, j, k, l) != -coeff(j, i, k, l))
                            return ThreeLieDefect{"antisymmetry",
                                                  {i, j, k, l, -1},
                                                  l,
                                                  "bracket not antisymmetric in the first two slots"};
                        if (coeff(i, j, k, l) != -coeff(i, k, j, l))
                            return ThreeLieDefect{"antisymmetry",
                                                  {i, j, k, l, -1},
                                                  l,
                                                  "bracket not antisymmetric in the last two slots"};
                    }
        // fundamental identity on all basis 5-tuples
        for (int x1 = 0; x1 < dim; ++x1)
            for (int x2 = 0; x2 < dim; ++x2)
                for (int x3 = 0; x3 < dim; ++x3)
                    for (int x4 = 0; x4 < dim; ++x4)
                        for (int x5 = 0; x5 < dim; ++x5)
                            for (int l = 0; l < dim; ++l) {
                                Rational lhs(0), rhs(0);
                                for (int m = 0; m < dim; ++m) {
                                    lhs += coeff(x1, x2, x3, m) * coeff(m, x4, x5, l);
                                    rhs += coeff(x1, x4, x5, m) * coeff(m, x2, x3, l);
                                    rhs += coeff(x2, x4, x5, m) * coeff(x1, m, x3, l);
                                    rhs += coeff(x3, x4, x5, m) * coeff(x1, x2, m, l);
                                }
                                if (lhs != rhs)
                                    return ThreeLieDefect{
                                        "fundamental",
                                        {x1, x2, x3, x4, x5},
                                        l,
                                        "fundamental identity fails on a basis 5-tuple"};
                            }
        return std::nullopt;
    }
};

// Bialgebra on K (+) L (basis index 0 is the distinguished vector 1): the
// multiplication restricts to the bracket on pure L-triples, fixes the
// distinguished triple, recovers x from (x, 1, 1), and kills every other
// mixed triple; the comultiplication sends x to x111 + 1x1 + 11x and the
// counit projects onto the distinguished coordinate. No validation here;
// three_lie_to_ternary is the validating entry point.
inline TernaryBialgebra three_lie_to_ternary_unchecked(const ThreeLieAlgebra& L) {
    int n = L.dim;
    int w = n + 1;
    LinearMap T(w, pow_int(w, 3));
    T.add(0, 0, Rational(1)); // (1,1,1) -> 1
    for (int x = 1; x < w; ++x) {
        T.add(x, ((x * w) + 0) * w + 0, Rational(1)); // (x,1,1) -> x
        for (int y = 1; y < w; ++y)
            for (int z = 1; z < w; ++z) {
                int col = (x * w + y) * w + z;
                for (int l = 0; l < n; ++l) {
                    const Rational& v = L.coeff(x - 1, y - 1, z - 1, l);
                    if (v != 0) T.add(l + 1, col, v);
                }
            }
    }
    LinearMap delta(pow_int(w, 3), w);
    delta.add(0, 0, Rational(1)); // Delta(1) = 1 x 1 x 1
    for (int x = 1; x < w; ++x) {
        delta.add((x * w + 0) * w + 0, x, Rational(1));
        delta.add((0 * w + x) * w + 0, x, Rational(1));
        delta.add((0 * w + 0) * w + x, x, Rational(1));
    }
    LinearMap eps(1, w);
    eps.set(0, 0, Rational(1));
    LinearMap eta(w, 1);
    eta.set(0, 0, Rational(1));
    return TernaryBialgebra(w, std::move(T), Coalgebra(w, std::move(delta), std::move(eps)),
                            std::move(eta));
}

inline TernaryBialgebra three_lie_to_ternary(const ThreeLieAlgebra& L) {
    if (auto defect = L.validate())
        throw std::invalid_argument("not a 3-Lie algebra: " + defect->description);
    return three_lie_to_ternary_unchecked(L);
}

// One solution of the dimension-2 classification: a map on a 2-dimensional
// space (basis x, y) with group-like comultiplication, sending each of the
// eight basis triples to one of 0, +x, -x, +y, -y. Codes: 0 -> 0, 1 -> +x,
// 2 -> -x, 3 -> +y, 4 -> -y. Triples are indexed b1*4 + b2*2 + b3 with
// x = 0, y = 1 (leftmost factor most significant).
struct Dim2Solution {
    std::array<int, 8> codes{};

    bool operator==(const Dim2Solution& o) const { return codes == o.codes; }
    bool operator<(const Dim2Solution& o) const { return codes < o.codes; }

    LinearMap to_linear_map() const {
        LinearMap q(2, 8);
        for (int t = 0; t < 8; ++t) {
            switch (codes[t]) {
                case 0: break;
                case 1: q.add(0, t, Rational(1)); break;
                case 2: q.add(0, t, Rational(-1)); break;
                case 3: q.add(1, t, Rational(1)); break;
                case 4: q.add(1, t, Rational(-1)); break;
                default: throw std::invalid_argument("invalid code");
            }
        }
        return q;
    }

    Dim2Solution negated() const {
        static const int flip[5] = {0, 2, 1, 4, 3};
        Dim2Solution out;
        for (int t = 0; t < 8; ++t) out.codes[t] = flip[codes[t]];
        return out;
    }

    // Conjugation by the basis swap x <-> y.
    Dim2Solution swapped() const {
        static const int swap_value[5] = {0, 3, 4, 1, 2};
        Dim2Solution out;
        for (int t = 0; t < 8; ++t) out.codes[t] = swap_value[codes[7 - t]];
        return out;
    }

    std::string to_string() const {
        static const char* names[5] = {"0", "+x", "-x", "+y", "-y"};
        std::string s;
        for (int t = 0; t < 8; ++t) {
            if (t) s += ',';
            s += names[codes[t]];
        }
        return s;
    }
};

namespace detail {

// Distributivity of a signed-basis-valued map on basis 5-tuples, evaluated in
// small integers. Values are encoded 0, +-1 (for +-x), +-2 (for +-y); the
// group-like comultiplication reduces both sides of the matrix identity to
// the scalar recursion below, and compatibility is automatic because every
// value s in {0,+1,-1} satisfies s^3 = s coordinatewise.
inline bool dim2_distributive(const std::array<int, 8>& signedv) {
    auto eval = [&](int a, int b, int c3) { return signedv[(a << 2) | (b << 1) | c3]; };
    for (int bits = 0; bits < 32; ++bits) {
        int x = (bits >> 4) & 1, y = (bits >> 3) & 1, z = (bits >> 2) & 1;
        int u = (bits >> 1) & 1, v = bits & 1;
        int s1 = eval(x, y, z);
        int lhs = 0;
        if (s1 != 0) {
            int inner = eval(std::abs(s1) - 1, u, v);
            lhs = s1 > 0 ? inner : -inner;
        }
        int sa = eval(x, u, v), sb = eval(y, u, v), sc = eval(z, u, v);
        int rhs = 0;
        if (sa != 0 && sb != 0 && sc != 0) {
            int inner = eval(std::abs(sa) - 1, std::abs(sb) - 1, std::abs(sc) - 1);
            rhs = (sa > 0) == (sb > 0) ? inner : -inner;
            rhs = (sc > 0) ? rhs : -rhs;
        }
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace detail

// Exhaustive scan of all 5^8 signed-basis assignments on the 2-dimensional
// group-like coalgebra, returning those satisfying linear distributivity and
// compatibility, ordered lexicographically by code tuple (first triple most
// significant). Compatibility holds automatically for signed-basis values, so
// the scan filters on distributivity alone; tests re-verify both matrix
// identities on the survivors.
inline std::vector<Dim2Solution> classify_dim2_maps() {
    static const int kSigned[5] = {0, 1, -1, 2, -2};
    std::vector<Dim2Solution> out;
    std::array<int, 8> codes{};
    std::array<int, 8> signedv{};
    while (true) {
        for (int t = 0; t < 8; ++t) signedv[t] = kSigned[codes[t]];
        if (detail::dim2_distributive(signedv)) {
            Dim2Solution s;
            s.codes = codes;
            out.push_back(s);
        }
        int pos = 7;
        while (pos >= 0 && codes[pos] == 4) codes[pos--] = 0;
        if (pos < 0) break;
        ++codes[pos];
    }
    return out;
}

} // namespace tdq
