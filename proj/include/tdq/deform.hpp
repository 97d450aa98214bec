#pragma once

// Truncated one-parameter formal deformations of a distributive ternary
// bialgebra: T_t = T + t T_1 + ... + t^N T_N and
// Delta_t = Delta + t Delta_1 + ... + t^N Delta_N, with
//  - order-by-order defects of the three structure identities,
//  - the identification of the order-p defect of a deformation whose first
//    nonzero term sits at order p with the degree-2 differential,
//  - equivalences T'_t = Phi_t T_t (Phi_t^{-1})^(x3),
//    Delta'_t = (Phi_t)^(x3) Delta_t Phi_t^{-1} by truncated series, and
//  - trivialization of a leading coboundary term by Phi_t = id + t^p g.
//
// Sign conventions follow the degree-1 differential layout fixed in
// cohomology.hpp: a leading pair (T_p, Delta_p) = (delta1_mult(g),
// -delta1_comult(g)) is exactly the pair killed by Phi_t = id + t^p g.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdq/cohomology.hpp"
#include "tdq/exact_linalg.hpp"
#include "tdq/linear.hpp"
#include "tdq/linear_map.hpp"

namespace tdq {

// A deformation truncated at t^{N+1}. Index i in the term vectors holds the
// order-(i+1) coefficient; order 0 is the base structure itself.
struct TruncatedDeformation {
    TernaryBialgebra base;
    int order; // N >= 1
    std::vector<LinearMap> t_terms;     // T_1 .. T_N, each dim x dim^3
    std::vector<LinearMap> delta_terms; // Delta_1 .. Delta_N, each dim^3 x dim

    TruncatedDeformation(TernaryBialgebra base_in, std::vector<LinearMap> t_in,
                         std::vector<LinearMap> delta_in)
        : base(std::move(base_in)),
          order(static_cast<int>(t_in.size())),
          t_terms(std::move(t_in)),
          delta_terms(std::move(delta_in)) {
        if (order < 1) throw std::invalid_argument("TruncatedDeformation: order must be >= 1");
        if (static_cast<int>(delta_terms.size()) != order)
            throw std::invalid_argument("TruncatedDeformation: term counts differ");
        const int d = base.dim, d3 = d * d * d;
        for (const auto& m : t_terms)
            if (m.rows() != d || m.cols() != d3)
                throw std::invalid_argument("TruncatedDeformation: T-term shape mismatch");
        for (const auto& m : delta_terms)
            if (m.rows() != d3 || m.cols() != d)
                throw std::invalid_argument("TruncatedDeformation: Delta-term shape mismatch");
    }

    // Coalgebra side held constant (all Delta_i = 0), the default for
    // set-linearized bases.
    static TruncatedDeformation with_constant_coalgebra(TernaryBialgebra base_in,
                                                        std::vector<LinearMap> t_in) {
        const int d3 = base_in.dim * base_in.dim * base_in.dim;
        std::vector<LinearMap> zeros(t_in.size(), LinearMap::zero(d3, base_in.dim));
        return TruncatedDeformation(std::move(base_in), std::move(t_in), std::move(zeros));
    }

    const LinearMap& t_at(int i) const { return i == 0 ? base.T : t_terms[i - 1]; }
    const LinearMap& delta_at(int i) const {
        return i == 0 ? base.coalgebra.delta : delta_terms[i - 1];
    }

    // Smallest order 1..N carrying a nonzero term, if any.
    std::optional<int> first_nonzero_order() const {
        for (int k = 1; k <= order; ++k)
            if (!t_terms[k - 1].is_zero() || !delta_terms[k - 1].is_zero()) return k;
        return std::nullopt;
    }
};

// Phi_t = id + t Phi_1 + ... + t^N Phi_N; invertible mod t^{N+1} since the
// constant term is the identity.
struct FormalIsomorphism {
    int dim;
    int order;
    std::vector<LinearMap> phi_terms; // Phi_1 .. Phi_N, each dim x dim

    FormalIsomorphism(int dim_in, std::vector<LinearMap> phi_in)
        : dim(dim_in), order(static_cast<int>(phi_in.size())), phi_terms(std::move(phi_in)) {
        if (order < 1) throw std::invalid_argument("FormalIsomorphism: order must be >= 1");
        for (const auto& m : phi_terms)
            if (m.rows() != dim || m.cols() != dim)
                throw std::invalid_argument("FormalIsomorphism: term shape mismatch");
    }

    static FormalIsomorphism identity_iso(int dim, int order) {
        return FormalIsomorphism(dim,
                                 std::vector<LinearMap>(order, LinearMap::zero(dim, dim)));
    }

    LinearMap phi_at(int i) const {
        return i == 0 ? LinearMap::identity(dim) : phi_terms[i - 1];
    }

    // Series inverse: Psi_0 = id, Psi_k = -sum_{i=1..k} Phi_i Psi_{k-i}.
    // Index i of the result is the order-i coefficient (so index 0 = id).
    std::vector<LinearMap> inverse_terms() const {
        std::vector<LinearMap> psi;
        psi.push_back(LinearMap::identity(dim));
        for (int k = 1; k <= order; ++k) {
            LinearMap acc = LinearMap::zero(dim, dim);
            for (int i = 1; i <= k; ++i) acc = acc - phi_at(i) * psi[k - i];
            psi.push_back(acc);
        }
        return psi;
    }

    // (this compose other)_t = this_t ∘ other_t, truncated.
    FormalIsomorphism compose(const FormalIsomorphism& other) const {
        if (dim != other.dim || order != other.order)
            throw std::invalid_argument("FormalIsomorphism::compose: shape or order mismatch");
        std::vector<LinearMap> terms;
        for (int k = 1; k <= order; ++k) {
            LinearMap acc = LinearMap::zero(dim, dim);
            for (int i = 0; i <= k; ++i) acc = acc + phi_at(i) * other.phi_at(k - i);
            terms.push_back(acc);
        }
        return FormalIsomorphism(dim, std::move(terms));
    }
};

// Order-k defect of the three structure identities.
struct ObstructionTriple {
    LinearMap phi1; // dim   x dim^5 : distributivity defect
    LinearMap phi2; // dim^3 x dim^3 : compatibility defect
    LinearMap phi3; // dim^5 x dim   : coassociativity (outer-placement) defect

    bool all_zero() const { return phi1.is_zero() && phi2.is_zero() && phi3.is_zero(); }
};

// Coefficient of t^k in the three deformation equations:
//   phi1: T_t (T_t (x) id (x) id) - T_t (T_t(x)T_t(x)T_t) P_rho (id^3 (x) Delta_t (x) Delta_t)
//   phi2: Delta_t T_t - (T_t(x)T_t(x)T_t) P_rho (Delta_t (x) Delta_t (x) Delta_t)
//   phi3: (Delta_t (x) id (x) id) Delta_t - (id (x) id (x) Delta_t) Delta_t
// computed by convolution over index compositions summing to k.
inline ObstructionTriple deformation_defect(const TruncatedDeformation& d, int k) {
    if (k < 1 || k > d.order)
        throw std::invalid_argument("deformation_defect: order " + std::to_string(k) +
                                    " outside 1.." + std::to_string(d.order));
    const int dim = d.base.dim;
    const int d3 = dim * dim * dim, d5 = d3 * dim * dim;
    const LinearMap id1 = LinearMap::identity(dim);
    const LinearMap id3 = LinearMap::identity(d3);

    LinearMap phi1 = LinearMap::zero(dim, d5);
    LinearMap phi2 = LinearMap::zero(d3, d3);
    LinearMap phi3 = LinearMap::zero(d5, dim);

    // Two-index convolutions.
    for (int i = 0; i <= k; ++i) {
        int j = k - i;
        if (i > d.order || j > d.order) continue;
        phi1 = phi1 + d.t_at(i) * kron3(d.t_at(j), id1, id1);
        phi2 = phi2 + d.delta_at(i) * d.t_at(j);
        phi3 = phi3 + kron3(d.delta_at(i), id1, id1) * d.delta_at(j) -
               kron3(id1, id1, d.delta_at(i)) * d.delta_at(j);
    }

    // Six-index convolutions through the factor-transpose permutation.
    // phi1 negative part: outer T_i, inner (T_j, T_l, T_m), diagonals
    // (Delta_a, Delta_b) on the last two inputs.
    for (int i = 0; i <= k; ++i) {
        if (i > d.order) continue;
        for (int j = 0; i + j <= k; ++j) {
            if (j > d.order) continue;
            for (int l = 0; i + j + l <= k; ++l) {
                if (l > d.order) continue;
                for (int m = 0; i + j + l + m <= k; ++m) {
                    if (m > d.order) continue;
                    for (int a = 0; i + j + l + m + a <= k; ++a) {
                        if (a > d.order) continue;
                        int b = k - i - j - l - m - a;
                        if (b > d.order) continue;
                        LinearMap inner =
                            rho_rows(kron3(id3, d.delta_at(a), d.delta_at(b)), dim);
                        phi1 = phi1 - d.t_at(i) * kron3_compose(d.t_at(j), d.t_at(l),
                                                                d.t_at(m), inner);
                    }
                }
            }
        }
    }
    // phi2 negative part: (T_i, T_j, T_l) after (Delta_a, Delta_b, Delta_c).
    for (int i = 0; i <= k; ++i) {
        if (i > d.order) continue;
        for (int j = 0; i + j <= k; ++j) {
            if (j > d.order) continue;
            for (int l = 0; i + j + l <= k; ++l) {
                if (l > d.order) continue;
                for (int a = 0; i + j + l + a <= k; ++a) {
                    if (a > d.order) continue;
                    for (int b = 0; i + j + l + a + b <= k; ++b) {
                        if (b > d.order) continue;
                        int c = k - i - j - l - a - b;
                        if (c > d.order) continue;
                        LinearMap inner = rho_rows(
                            kron3(d.delta_at(a), d.delta_at(b), d.delta_at(c)), dim);
                        phi2 = phi2 -
                               kron3_compose(d.t_at(i), d.t_at(j), d.t_at(l), inner);
                    }
                }
            }
        }
    }
    return {std::move(phi1), std::move(phi2), std::move(phi3)};
}

// True iff the deformation satisfies all three structure identities mod
// t^{N+1}, i.e. every defect through order N vanishes.
inline bool is_valid_mod(const TruncatedDeformation& d) {
    for (int k = 1; k <= d.order; ++k)
        if (!deformation_defect(d, k).all_zero()) return false;
    return true;
}

// For a deformation whose terms below order p vanish: the order-p defect is
// exactly the degree-2 differential of (T_p, Delta_p), so the leading term is
// a 2-cocycle iff the deformation is valid at order p. Throws if an earlier
// term is nonzero.
inline bool infinitesimal_cocycle_check(const TruncatedDeformation& d, int p) {
    if (p < 1 || p > d.order)
        throw std::invalid_argument("infinitesimal_cocycle_check: order out of range");
    for (int k = 1; k < p; ++k)
        if (!d.t_terms[k - 1].is_zero() || !d.delta_terms[k - 1].is_zero())
            throw std::invalid_argument(
                "infinitesimal_cocycle_check: nonzero term below the stated leading order");
    detail::DifferentialWorkspace w(d.base);
    const LinearMap& psi1 = d.t_terms[p - 1];
    const LinearMap& psi2 = d.delta_terms[p - 1];
    return detail::d2_component1(w, d.base, psi1, psi2).is_zero() &&
           detail::d2_component2(w, d.base, psi1, psi2).is_zero() &&
           detail::d2_component3(w, d.base, psi2).is_zero();
}

// Convenience overload: p = the first nonzero order; an all-zero deformation
// passes vacuously.
inline bool infinitesimal_cocycle_check(const TruncatedDeformation& d) {
    auto p = d.first_nonzero_order();
    if (!p) return true;
    return infinitesimal_cocycle_check(d, *p);
}

// Transport of the deformation along Phi_t:
//   T'_t     = Phi_t ∘ T_t ∘ (Phi_t^{-1} (x) Phi_t^{-1} (x) Phi_t^{-1})
//   Delta'_t = (Phi_t (x) Phi_t (x) Phi_t) ∘ Delta_t ∘ Phi_t^{-1}
// truncated at t^{N+1}. At first order with constant coalgebra side this
// gives T'_1 = T_1 - delta1_mult(Phi_1) and Delta'_1 = Delta_1 +
// delta1_comult(Phi_1): the signs that let Phi_t = id + t g absorb a leading
// pair (delta1_mult(g), -delta1_comult(g)).
inline TruncatedDeformation apply_equivalence(const FormalIsomorphism& phi,
                                              const TruncatedDeformation& d) {
    if (phi.dim != d.base.dim)
        throw std::invalid_argument("apply_equivalence: dimension mismatch");
    if (phi.order != d.order)
        throw std::invalid_argument("apply_equivalence: truncation order mismatch");
    const int N = d.order, dim = d.base.dim;
    const int d3 = dim * dim * dim;
    const std::vector<LinearMap> psi = phi.inverse_terms();

    std::vector<LinearMap> t_out, delta_out;
    for (int k = 1; k <= N; ++k) {
        LinearMap t_acc = LinearMap::zero(dim, d3);
        LinearMap dl_acc = LinearMap::zero(d3, dim);
        for (int a = 0; a <= k; ++a) {
            for (int i = 0; a + i <= k; ++i) {
                if (i > N) continue;
                for (int p = 0; a + i + p <= k; ++p) {
                    for (int q = 0; a + i + p + q <= k; ++q) {
                        int r = k - a - i - p - q;
                        t_acc = t_acc + phi.phi_at(a) * d.t_at(i) *
                                            kron3(psi[p], psi[q], psi[r]);
                        dl_acc = dl_acc + kron3(phi.phi_at(a), phi.phi_at(p), phi.phi_at(q)) *
                                              d.delta_at(i) * psi[r];
                    }
                }
            }
        }
        t_out.push_back(std::move(t_acc));
        delta_out.push_back(std::move(dl_acc));
    }
    return TruncatedDeformation(d.base, std::move(t_out), std::move(delta_out));
}

// If the leading term (T_p, Delta_p) is a degree-1 coboundary — i.e.
// solves (delta1_mult(g), -delta1_comult(g)) = (T_p, Delta_p) — returns
// Phi_t = id + t^p g, which pushes the first nonzero term past order p.
// Returns the identity for an all-zero deformation and nothing when the
// leading term is not a coboundary.
inline std::optional<FormalIsomorphism> trivialize_coboundary(const TruncatedDeformation& d) {
    auto first = d.first_nonzero_order();
    if (!first) return FormalIsomorphism::identity_iso(d.base.dim, d.order);
    const int p = *first;
    CochainLayout layout(d.base.dim);
    auto g_vec = solve(build_d1(d.base), layout.pack2(d.t_terms[p - 1], d.delta_terms[p - 1]));
    if (!g_vec) return std::nullopt;
    FormalIsomorphism phi = FormalIsomorphism::identity_iso(d.base.dim, d.order);
    phi.phi_terms[p - 1] = layout.unvec1(*g_vec);
    return phi;
}

} // namespace tdq
