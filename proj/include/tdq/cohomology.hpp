#pragma once

// Cochain complexes for distributive ternary bialgebras in low degrees:
// coordinate layout for the first three cochain spaces, the degree-1 and
// degree-2 differentials assembled as explicit sparse matrices, the exact
// chain-condition check D2*D1 = 0, and rank-based cohomology dimensions.
//
// Cochain spaces over a base A of dimension d:
//   C^1 = Hom(A, A)                                   (d^2 coordinates)
//   C^2 = Hom(A^3, A)  (+)  Hom(A, A^3)               (d^4 + d^4)
//   C^3 = Hom(A^5, A)  (+)  Hom(A^3, A^3)  (+)  Hom(A, A^5)   (3 d^6)
// Each Hom block is flattened column-major (LinearMap::vec order) and blocks
// are concatenated in the order listed. A degree-2 cochain is written
// (psi1, psi2) with psi1 : A^3 -> A and psi2 : A -> A^3.

#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tdq/exact_linalg.hpp"
#include "tdq/linear.hpp"
#include "tdq/linear_map.hpp"

namespace tdq {

// Thrown when a computation is requested above the supported size for full
// matrix assembly.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when D2*D1 != 0, i.e. the input does not satisfy the structure
// identities the complex is built on. Carries the first offending degree-1
// coordinate as a witness.
struct ChainConditionError : std::runtime_error {
    int witness_column;
    ChainConditionError(int column, const std::string& message)
        : std::runtime_error(message), witness_column(column) {}
};

// Coordinate bookkeeping between Hom-space blocks and flat vectors.
struct CochainLayout {
    int dim;

    explicit CochainLayout(int d) : dim(d) {
        if (d <= 0) throw std::invalid_argument("CochainLayout: dimension must be positive");
        pow_int(d, 6); // overflow guard for the largest block
    }

    int c1_dim() const { return pow_int(dim, 2); }
    int c2_dim() const { return 2 * pow_int(dim, 4); }
    int c3_dim() const { return 3 * pow_int(dim, 6); }

    // Block sizes inside C^2 and C^3 (each C^3 block has d^6 coordinates).
    int hom31_dim() const { return pow_int(dim, 4); } // Hom(A^3, A)
    int hom13_dim() const { return pow_int(dim, 4); } // Hom(A, A^3)
    int c3_block_dim() const { return pow_int(dim, 6); }

    std::vector<Rational> vec1(const LinearMap& f) const {
        require_shape(f, dim, dim, "vec1");
        return f.vec();
    }
    LinearMap unvec1(const std::vector<Rational>& v) const {
        return LinearMap::from_vec(dim, dim, v);
    }

    std::vector<Rational> pack2(const LinearMap& psi1, const LinearMap& psi2) const {
        require_shape(psi1, dim, pow_int(dim, 3), "pack2 first block");
        require_shape(psi2, pow_int(dim, 3), dim, "pack2 second block");
        std::vector<Rational> out = psi1.vec();
        std::vector<Rational> tail = psi2.vec();
        out.insert(out.end(), tail.begin(), tail.end());
        return out;
    }
    std::pair<LinearMap, LinearMap> unpack2(const std::vector<Rational>& v) const {
        if (static_cast<int>(v.size()) != c2_dim())
            throw std::invalid_argument("unpack2: wrong length");
        int d3 = pow_int(dim, 3);
        std::vector<Rational> a(v.begin(), v.begin() + hom31_dim());
        std::vector<Rational> b(v.begin() + hom31_dim(), v.end());
        return {LinearMap::from_vec(dim, d3, a), LinearMap::from_vec(d3, dim, b)};
    }

    std::vector<Rational> pack3(const LinearMap& m1, const LinearMap& m2,
                                const LinearMap& m3) const {
        int d3 = pow_int(dim, 3), d5 = pow_int(dim, 5);
        require_shape(m1, dim, d5, "pack3 first block");
        require_shape(m2, d3, d3, "pack3 second block");
        require_shape(m3, d5, dim, "pack3 third block");
        std::vector<Rational> out = m1.vec();
        std::vector<Rational> mid = m2.vec();
        std::vector<Rational> last = m3.vec();
        out.insert(out.end(), mid.begin(), mid.end());
        out.insert(out.end(), last.begin(), last.end());
        return out;
    }
    std::tuple<LinearMap, LinearMap, LinearMap> unpack3(const std::vector<Rational>& v) const {
        if (static_cast<int>(v.size()) != c3_dim())
            throw std::invalid_argument("unpack3: wrong length");
        int d3 = pow_int(dim, 3), d5 = pow_int(dim, 5), b = c3_block_dim();
        std::vector<Rational> a(v.begin(), v.begin() + b);
        std::vector<Rational> m(v.begin() + b, v.begin() + 2 * b);
        std::vector<Rational> c(v.begin() + 2 * b, v.end());
        return {LinearMap::from_vec(dim, d5, a), LinearMap::from_vec(d3, d3, m),
                LinearMap::from_vec(d5, dim, c)};
    }

  private:
    static void require_shape(const LinearMap& m, int rows, int cols, const char* where) {
        if (m.rows() != rows || m.cols() != cols)
            throw std::invalid_argument(std::string(where) + ": expected " +
                                        std::to_string(rows) + "x" + std::to_string(cols) +
                                        ", got " + m.shape());
    }
};

// --- degree-1 differential --------------------------------------------------

// Multiplication-side part: f |-> T(f(x)id(x)id) + T(id(x)f(x)id) +
// T(id(x)id(x)f) - f T, a map A^3 -> A.
inline LinearMap delta1_mult(const TernaryBialgebra& b, const LinearMap& f) {
    if (f.rows() != b.dim || f.cols() != b.dim)
        throw std::invalid_argument("delta1_mult: cochain shape mismatch");
    const LinearMap id = LinearMap::identity(b.dim);
    return b.T * kron3(f, id, id) + b.T * kron3(id, f, id) + b.T * kron3(id, id, f) - f * b.T;
}

// Comultiplication-side part: f |-> (f(x)id(x)id)Delta + (id(x)f(x)id)Delta +
// (id(x)id(x)f)Delta - Delta f, a map A -> A^3.
inline LinearMap delta1_comult(const TernaryBialgebra& b, const LinearMap& f) {
    if (f.rows() != b.dim || f.cols() != b.dim)
        throw std::invalid_argument("delta1_comult: cochain shape mismatch");
    const LinearMap id = LinearMap::identity(b.dim);
    const LinearMap& dl = b.coalgebra.delta;
    return kron3(f, id, id) * dl + kron3(id, f, id) * dl + kron3(id, id, f) * dl - dl * f;
}

namespace detail {

// Maps shared by every column of the degree-2 differential, precomputed once
// per base. All d^9-row intermediates stay sparse; nothing of width d^9 is
// ever materialized.
struct DifferentialWorkspace {
    int d;
    LinearMap id1, id3;
    LinearMap t_id_id;       // T (x) id (x) id                              : d^3 x d^5
    LinearMap rho_idd;       // P_rho (id^3 (x) Delta (x) Delta)             : d^9 x d^5
    LinearMap outer_ttt;     // (T(x)T(x)T) P_rho (id^3 (x) Delta (x) Delta) : d^3 x d^5
    LinearMap rho_ddd;       // P_rho (Delta (x) Delta (x) Delta)            : d^9 x d^3
    LinearMap delta_id_id;   // Delta (x) id (x) id                          : d^5 x d^3
    LinearMap id_id_delta;   // id (x) id (x) Delta                          : d^5 x d^3

    explicit DifferentialWorkspace(const TernaryBialgebra& b)
        : d(b.dim),
          id1(LinearMap::identity(b.dim)),
          id3(LinearMap::identity(pow_int(b.dim, 3))),
          t_id_id(kron3(b.T, id1, id1)),
          rho_idd(rho_rows(kron3(id3, b.coalgebra.delta, b.coalgebra.delta), b.dim)),
          outer_ttt(kron3_compose(b.T, b.T, b.T, rho_idd)),
          rho_ddd(rho_rows(
              kron3(b.coalgebra.delta, b.coalgebra.delta, b.coalgebra.delta), b.dim)),
          delta_id_id(kron3(b.coalgebra.delta, id1, id1)),
          id_id_delta(kron3(id1, id1, b.coalgebra.delta)) {}
};

// First component, a map A^5 -> A:
//   [psi1 (T(x)id(x)id) + T (psi1(x)id(x)id)]
// - [psi1 (T(x)T(x)T) P_rho (id^3(x)Delta(x)Delta)
//    + T (psi1(x)T(x)T) P_rho (id^3(x)Delta(x)Delta)
//    + T (T(x)psi1(x)T) P_rho (id^3(x)Delta(x)Delta)
//    + T (T(x)T(x)psi1) P_rho (id^3(x)Delta(x)Delta)
//    + T (T(x)T(x)T) P_rho (id^3(x)psi2(x)Delta)
//    + T (T(x)T(x)T) P_rho (id^3(x)Delta(x)psi2)]
inline LinearMap d2_component1(const DifferentialWorkspace& w, const TernaryBialgebra& b,
                               const LinearMap& psi1, const LinearMap& psi2) {
    const LinearMap& T = b.T;
    const LinearMap& dl = b.coalgebra.delta;
    LinearMap pos = psi1 * w.t_id_id + T * kron3(psi1, w.id1, w.id1);
    LinearMap neg = psi1 * w.outer_ttt;
    neg = neg + T * kron3_compose(psi1, T, T, w.rho_idd);
    neg = neg + T * kron3_compose(T, psi1, T, w.rho_idd);
    neg = neg + T * kron3_compose(T, T, psi1, w.rho_idd);
    neg = neg + T * kron3_compose(T, T, T, rho_rows(kron3(w.id3, psi2, dl), w.d));
    neg = neg + T * kron3_compose(T, T, T, rho_rows(kron3(w.id3, dl, psi2), w.d));
    return pos - neg;
}

// Second component, a map A^3 -> A^3:
//   [psi2 T + Delta psi1]
// - [(psi1(x)T(x)T) P_rho (Delta(x)Delta(x)Delta)
//    + (T(x)psi1(x)T) P_rho (Delta(x)Delta(x)Delta)
//    + (T(x)T(x)psi1) P_rho (Delta(x)Delta(x)Delta)
//    + (T(x)T(x)T) P_rho (psi2(x)Delta(x)Delta)
//    + (T(x)T(x)T) P_rho (Delta(x)psi2(x)Delta)
//    + (T(x)T(x)T) P_rho (Delta(x)Delta(x)psi2)]
inline LinearMap d2_component2(const DifferentialWorkspace& w, const TernaryBialgebra& b,
                               const LinearMap& psi1, const LinearMap& psi2) {
    const LinearMap& T = b.T;
    const LinearMap& dl = b.coalgebra.delta;
    LinearMap pos = psi2 * T + dl * psi1;
    LinearMap neg = kron3_compose(psi1, T, T, w.rho_ddd);
    neg = neg + kron3_compose(T, psi1, T, w.rho_ddd);
    neg = neg + kron3_compose(T, T, psi1, w.rho_ddd);
    neg = neg + kron3_compose(T, T, T, rho_rows(kron3(psi2, dl, dl), w.d));
    neg = neg + kron3_compose(T, T, T, rho_rows(kron3(dl, psi2, dl), w.d));
    neg = neg + kron3_compose(T, T, T, rho_rows(kron3(dl, dl, psi2), w.d));
    return pos - neg;
}

// Third component, a map A -> A^5; consumes only psi2:
//   [(psi2(x)id(x)id) Delta + (Delta(x)id(x)id) psi2]
// - [(id(x)id(x)psi2) Delta + (id(x)id(x)Delta) psi2]
inline LinearMap d2_component3(const DifferentialWorkspace& w, const TernaryBialgebra& b,
                               const LinearMap& psi2) {
    const LinearMap& dl = b.coalgebra.delta;
    return kron3(psi2, w.id1, w.id1) * dl + w.delta_id_id * psi2 -
           kron3(w.id1, w.id1, psi2) * dl - w.id_id_delta * psi2;
}

inline void store_column(LinearMap& m, int col, const std::vector<Rational>& values) {
    for (int r = 0; r < static_cast<int>(values.size()); ++r)
        if (values[r] != 0) m.set(r, col, values[r]);
}

// Rows [begin, end) of m as a standalone map.
inline LinearMap row_slice(const LinearMap& m, int begin, int end) {
    LinearMap out(end - begin, m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c))
            if (e.row >= begin && e.row < end) out.set(e.row - begin, c, e.value);
    return out;
}

} // namespace detail

// Single-shot evaluators for the three degree-2 components (workspace built
// per call; use build_d2 for whole-space assembly).
inline LinearMap d2_component1(const TernaryBialgebra& b, const LinearMap& psi1,
                               const LinearMap& psi2) {
    detail::DifferentialWorkspace w(b);
    return detail::d2_component1(w, b, psi1, psi2);
}
inline LinearMap d2_component2(const TernaryBialgebra& b, const LinearMap& psi1,
                               const LinearMap& psi2) {
    detail::DifferentialWorkspace w(b);
    return detail::d2_component2(w, b, psi1, psi2);
}
inline LinearMap d2_component3(const TernaryBialgebra& b, const LinearMap& psi2) {
    detail::DifferentialWorkspace w(b);
    return detail::d2_component3(w, b, psi2);
}

// The (2 d^4) x d^2 matrix of f |-> (delta1_mult(f), -delta1_comult(f)).
// The sign on the second block is the one that makes D2*D1 vanish.
inline LinearMap build_d1(const TernaryBialgebra& b) {
    CochainLayout layout(b.dim);
    LinearMap out(layout.c2_dim(), layout.c1_dim());
    for (int j = 0; j < layout.c1_dim(); ++j) {
        LinearMap f(b.dim, b.dim);
        f.set(j % b.dim, j / b.dim, Rational(1));
        detail::store_column(out, j, layout.pack2(delta1_mult(b, f), -delta1_comult(b, f)));
    }
    return out;
}

// The (3 d^6) x (2 d^4) matrix of (psi1, psi2) |-> (first, second, third
// component). Full assembly is supported for d <= 4.
inline LinearMap build_d2(const TernaryBialgebra& b) {
    if (b.dim > 4)
        throw ResourceLimitError("build_d2: full assembly supported for dimension <= 4, got " +
                                 std::to_string(b.dim));
    CochainLayout layout(b.dim);
    detail::DifferentialWorkspace w(b);
    const int d3 = pow_int(b.dim, 3);
    const LinearMap zero1 = LinearMap::zero(b.dim, d3);
    const LinearMap zero2 = LinearMap::zero(d3, b.dim);
    LinearMap out(layout.c3_dim(), layout.c2_dim());
    for (int j = 0; j < layout.hom31_dim(); ++j) {
        LinearMap psi1(b.dim, d3);
        psi1.set(j % b.dim, j / b.dim, Rational(1));
        detail::store_column(out, j,
                             layout.pack3(detail::d2_component1(w, b, psi1, zero2),
                                          detail::d2_component2(w, b, psi1, zero2),
                                          detail::d2_component3(w, b, zero2)));
    }
    for (int j = 0; j < layout.hom13_dim(); ++j) {
        LinearMap psi2(d3, b.dim);
        psi2.set(j % d3, j / d3, Rational(1));
        detail::store_column(out, layout.hom31_dim() + j,
                             layout.pack3(detail::d2_component1(w, b, zero1, psi2),
                                          detail::d2_component2(w, b, zero1, psi2),
                                          detail::d2_component3(w, b, psi2)));
    }
    return out;
}

// Both differentials with the chain condition verified, not assumed.
struct DifferentialPair {
    CochainLayout layout;
    LinearMap d1; // (2 d^4) x d^2
    LinearMap d2; // (3 d^6) x (2 d^4)

    static DifferentialPair assemble(const TernaryBialgebra& b) {
        DifferentialPair pair{CochainLayout(b.dim), build_d1(b), build_d2(b)};
        LinearMap product = pair.d2 * pair.d1;
        if (!product.is_zero()) {
            for (int c = 0; c < product.cols(); ++c)
                if (!product.column(c).empty())
                    throw ChainConditionError(
                        c, "chain condition failed: column " + std::to_string(c) +
                               " of D2*D1 is nonzero (base does not satisfy the"
                               " distributive-bialgebra identities)");
        }
        return pair;
    }
};

// Exact dimension data for the low-degree cohomology of a base.
struct CohomologyReport {
    int dim = 0;
    int c1_dim = 0, c2_dim = 0, c3_dim = 0;
    int z1_mult = 0;   // dim ker of the multiplication-side degree-1 block
    int z1_comult = 0; // dim ker of the comultiplication-side degree-1 block
    int h1 = 0;        // z1_mult + z1_comult
    int rank_d1 = 0;   // dim of the degree-2 coboundary space
    int rank_d2 = 0;
    int z2 = 0;        // dim ker D2 = c2_dim - rank_d2
    int h2 = 0;        // z2 - rank_d1
};

// Kernel and rank dimensions of an assembled pair, by exact rational
// elimination.
inline CohomologyReport cohomology_report(const DifferentialPair& pair) {
    const int block = pair.layout.hom31_dim();
    CohomologyReport r;
    r.dim = pair.layout.dim;
    r.c1_dim = pair.layout.c1_dim();
    r.c2_dim = pair.layout.c2_dim();
    r.c3_dim = pair.layout.c3_dim();
    int rank_mult = rank_sparse(detail::row_slice(pair.d1, 0, block));
    int rank_comult = rank_sparse(detail::row_slice(pair.d1, block, 2 * block));
    r.z1_mult = r.c1_dim - rank_mult;
    r.z1_comult = r.c1_dim - rank_comult;
    r.h1 = r.z1_mult + r.z1_comult;
    r.rank_d1 = rank_sparse(pair.d1);
    r.rank_d2 = rank_sparse(pair.d2);
    r.z2 = r.c2_dim - r.rank_d2;
    r.h2 = r.z2 - r.rank_d1;
    return r;
}

// Assembles the complex for the base (verifying D2*D1 = 0) and reports.
inline CohomologyReport cohomology_report(const TernaryBialgebra& b) {
    return cohomology_report(DifferentialPair::assemble(b));
}

} // namespace tdq
