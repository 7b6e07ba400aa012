#pragma once

#include <vector>

#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/schmidt.hpp"

namespace ancilla {

// Subspace of d_b x d_b operators with an orthonormal basis under hs_inner.
struct OperatorSubspace {
    std::size_t dim_b = 0;
    std::vector<CMatrix> basis;

    std::size_t dim() const { return basis.size(); }
};

// Span of the ancilla-side Schmidt operators; they arrive orthonormal.
inline OperatorSubspace span_b(const SchmidtDecomposition& sd) {
    OperatorSubspace s;
    s.dim_b = sd.d_b;
    s.basis = sd.b_ops;
    return s;
}

// Orthocomplement under the HS inner product, computed from the projector
// onto the input span: eigenvectors of eigenvalue 0 are the complement.
inline OperatorSubspace orthocomplement(const OperatorSubspace& s) {
    const std::size_t d = s.dim_b;
    const std::size_t n = d * d;
    CMatrix proj(n, n);
    for (const auto& b : s.basis) proj += outer(vec(b), vec(b));

    OperatorSubspace r;
    r.dim_b = d;
    if (s.basis.empty()) {
        for (std::size_t k = 0; k < n; ++k)
            r.basis.push_back(unvec(basis_state(n, k), d, d));
        return r;
    }
    EigResult eig = herm_eig(proj, 1e-9);
    for (std::size_t k = 0; k < n; ++k)
        if (eig.values[k] < 0.5) r.basis.push_back(unvec(eig.vectors.col(k), d, d));
    return r;
}

// Subspace of H_B spanned by { O |phi> : O in the operator subspace }.
struct VectorSubspace {
    std::vector<CVector> basis;

    std::size_t dim() const { return basis.size(); }
};

inline VectorSubspace generated_subspace(const OperatorSubspace& ob, const CVector& phi,
                                         const Tolerances& tol = {}) {
    if (phi.size() != ob.dim_b)
        throw std::invalid_argument("generated_subspace: vector dimension mismatch");
    if (std::abs(vnorm(phi) - 1.0) > 1e-9)
        throw precondition_error("generated_subspace: phi not normalized");
    VectorSubspace r;
    if (ob.basis.empty()) return r;

    CMatrix cols(ob.dim_b, ob.basis.size());
    for (std::size_t j = 0; j < ob.basis.size(); ++j) cols.set_col(j, mat_vec(ob.basis[j], phi));
    SvdResult d = svd(cols);
    const int rank = rank_with_tol(d.s, tol);
    for (int k = 0; k < rank; ++k) r.basis.push_back(d.u.col(k));
    return r;
}

// Verdict for |phi><phi| membership in the cone { B^dag B : B in span_b }.
struct ConeMembership {
    bool in_cone = false;
    double margin = 0.0;  // 1 - ||sum_n B_n |phi><phi| B_n^dag||_inf, clamped at 0
};

// Spectral-norm membership test. The operator norm is read off the Gram
// matrix K_nm = <phi| B_n^dag B_m |phi>, which shares its nonzero spectrum
// with sum_n B_n |phi><phi| B_n^dag.
inline ConeMembership rank_one_in_cone(const SchmidtDecomposition& sd, const CVector& phi,
                                       const Tolerances& tol = {}) {
    if (phi.size() != sd.d_b)
        throw std::invalid_argument("rank_one_in_cone: vector dimension mismatch");
    if (std::abs(vnorm(phi) - 1.0) > 1e-9)
        throw precondition_error("rank_one_in_cone: phi not normalized");

    const int r = sd.rank;
    std::vector<CVector> chi(r);
    for (int n = 0; n < r; ++n) chi[n] = mat_vec(sd.b_ops[n], phi);
    CMatrix gram(r, r);
    for (int n = 0; n < r; ++n)
        for (int m = 0; m < r; ++m) gram(n, m) = vdot(chi[n], chi[m]);

    const EigResult eig = herm_eig(gram, 1e-8);
    const double norm_inf = eig.values.empty() ? 0.0 : eig.values.back();

    ConeMembership c;
    c.margin = std::max(0.0, 1.0 - norm_inf);
    c.in_cone = c.margin <= tol.margin_tol;
    return c;
}

}  // namespace ancilla
