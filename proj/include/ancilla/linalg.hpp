#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>

#include "ancilla/matrix.hpp"

namespace ancilla {

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k pairs with values[k]
};

namespace detail {

// One complex Givens-Jacobi rotation zeroing h(p,q), p < q.
// Updates h in place and accumulates the rotation into v.
inline void jacobi_rotate(CMatrix& h, CMatrix& v, std::size_t p, std::size_t q) {
    const cx hpq = h(p, q);
    const double apq = std::abs(hpq);
    if (apq == 0.0) return;
    const cx phase = hpq / apq;  // h(p,q) = apq * phase
    const double app = h(p, p).real();
    const double aqq = h(q, q).real();

    const double tau = (app - aqq) / (2.0 * apq);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Column transform by J with J(p,p)=c, J(p,q)=-s, J(q,p)=conj(phase)*s,
    // J(q,q)=conj(phase)*c, then row transform by J^dag.
    const std::size_t n = h.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const cx hkp = h(k, p), hkq = h(k, q);
        h(k, p) = c * hkp + s * std::conj(phase) * hkq;
        h(k, q) = -s * hkp + c * std::conj(phase) * hkq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cx hpk = h(p, k), hqk = h(q, k);
        h(p, k) = c * hpk + s * phase * hqk;
        h(q, k) = -s * hpk + c * phase * hqk;
    }
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    h(p, p) = cx(h(p, p).real(), 0.0);
    h(q, q) = cx(h(q, q).real(), 0.0);

    for (std::size_t k = 0; k < v.rows(); ++k) {
        const cx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp + s * std::conj(phase) * vkq;
        v(k, q) = -s * vkp + c * std::conj(phase) * vkq;
    }
}

inline double offdiag_frobenius(const CMatrix& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
// Iterates until the off-diagonal Frobenius mass drops below 1e-14 * ||m||_F.
inline EigResult herm_eig(const CMatrix& m, double herm_tol = 1e-10) {
    if (m.rows() != m.cols()) throw std::invalid_argument("herm_eig: matrix not square");
    if (!m.is_hermitian(herm_tol)) throw std::invalid_argument("herm_eig: matrix not Hermitian");

    const std::size_t n = m.rows();
    // Symmetrize to remove sub-tolerance asymmetry before iterating.
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    CMatrix v = CMatrix::identity(n);

    const double target = 1e-14 * m.frobenius_norm();
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_frobenius(h) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(h, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

    EigResult r;
    r.values.resize(n);
    r.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.values[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

struct SvdResult {
    CMatrix u;              // m x k, orthonormal columns
    std::vector<double> s;  // descending, nonnegative, length k = min(m,n)
    CMatrix v;              // n x k, orthonormal columns
};

// SVD through the Hermitian eigendecomposition of the smaller Gram matrix.
// Singular values are recomputed as ||M v_k|| so that exact zeros are not
// lost to the squared conditioning of M^dag M.
inline SvdResult svd(const CMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows < cols) {
        SvdResult t = svd(m.dagger());
        return SvdResult{t.v, t.s, t.u};
    }

    const std::size_t k = cols;
    CMatrix gram = m.dagger() * m;
    EigResult eig = herm_eig(gram, 1e-6 * std::max(1.0, gram.max_abs()));

    // Descending by Gram eigenvalue, then recompute sigma = ||M v||.
    std::vector<CVector> vcols(k);
    std::vector<CVector> wcols(k);
    std::vector<double> sigma(k);
    for (std::size_t j = 0; j < k; ++j) {
        vcols[j] = eig.vectors.col(k - 1 - j);
        wcols[j] = mat_vec(m, vcols[j]);
        sigma[j] = vnorm(wcols[j]);
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    SvdResult r;
    r.s.resize(k);
    r.u = CMatrix(rows, k);
    r.v = CMatrix(cols, k);
    const double smax = sigma.empty() ? 0.0 : sigma[order[0]];
    const double live = 1e-13 * smax;

    std::vector<CVector> ucols;
    ucols.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        r.s[j] = sigma[src];
        r.v.set_col(j, vcols[src]);

        CVector u = wcols[src];
        // Re-orthonormalize against the columns already emitted; this also
        // cleans up near-degenerate singular clusters.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& prev : ucols) {
                const cx proj = vdot(prev, u);
                for (std::size_t i = 0; i < u.size(); ++i) u[i] -= proj * prev[i];
            }
        double norm = vnorm(u);
        if (sigma[src] <= live || norm <= live) {
            // Column belongs to the (numerical) null space of M^dag; complete
            // with an arbitrary orthonormal direction.
            u.assign(rows, cx(0.0, 0.0));
            for (std::size_t cand = 0; cand < rows; ++cand) {
                CVector e = basis_state(rows, cand);
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& prev : ucols) {
                        const cx proj = vdot(prev, e);
                        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= proj * prev[i];
                    }
                if (vnorm(e) > 0.5) {
                    u = e;
                    norm = vnorm(e);
                    break;
                }
            }
        }
        for (auto& z : u) z /= norm;
        ucols.push_back(u);
        r.u.set_col(j, u);
    }
    return r;
}

// Count of singular values above rank_tol relative to the largest.
inline int rank_with_tol(const std::vector<double>& s, const Tolerances& tol = {}) {
    if (s.empty() || s[0] == 0.0) return 0;
    int r = 0;
    for (double x : s)
        if (x > tol.rank_tol * s[0]) ++r;
    return r;
}

inline int matrix_rank(const CMatrix& m, const Tolerances& tol = {}) {
    return rank_with_tol(svd(m).s, tol);
}

// Minimum-norm least-squares solution of a x = b via the SVD pseudo-inverse.
// Singular values below rank_tol * s_max are treated as zero.
inline CVector least_squares(const CMatrix& a, const CVector& b, const Tolerances& tol = {}) {
    if (a.rows() != b.size()) throw std::invalid_argument("least_squares: shape mismatch");
    SvdResult d = svd(a);
    CVector x(a.cols(), cx(0.0, 0.0));
    const double cutoff = d.s.empty() ? 0.0 : tol.rank_tol * d.s[0];
    for (std::size_t k = 0; k < d.s.size(); ++k) {
        if (d.s[k] <= cutoff) continue;
        const cx coeff = vdot(d.u.col(k), b) / d.s[k];
        const CVector vk = d.v.col(k);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += coeff * vk[i];
    }
    return x;
}

}  // namespace ancilla
