#pragma once

#include <string>
#include <vector>

#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"

namespace ancilla {

// Joint unitary on system A (dimension d_a) and ancilla B (dimension d_b),
// composite basis |a>|b> at row a*d_b + b.
struct BipartiteUnitary {
    CMatrix u;
    std::size_t d_a;
    std::size_t d_b;

    BipartiteUnitary(CMatrix mat, std::size_t da, std::size_t db)
        : u(std::move(mat)), d_a(da), d_b(db) {
        if (d_a < 1 || d_b < 2)
            throw validation_error("BipartiteUnitary: require d_a >= 1 and d_b >= 2");
        if (u.rows() != d_a * d_b || u.cols() != d_a * d_b)
            throw validation_error("BipartiteUnitary: matrix is " + std::to_string(u.rows()) +
                                   "x" + std::to_string(u.cols()) + ", expected " +
                                   std::to_string(d_a * d_b) + "x" + std::to_string(d_a * d_b));
        if (!u.all_finite()) throw validation_error("BipartiteUnitary: non-finite entries");
        const double dev = (u.dagger() * u - CMatrix::identity(d_a * d_b)).max_abs();
        if (dev > 1e-9)
            throw unitarity_error("matrix is not unitary: max |U^dag U - I| entry = " +
                                  std::to_string(dev));
    }
};

// Operator Schmidt decomposition U = sum_n weights[n] * a_ops[n] (x) b_ops[n]
// with both operator families orthonormal under the HS inner product.
struct SchmidtDecomposition {
    std::size_t d_a = 0;
    std::size_t d_b = 0;
    int rank = 0;
    std::vector<double> weights;   // positive, descending
    std::vector<CMatrix> a_ops;    // d_a x d_a, orthonormal
    std::vector<CMatrix> b_ops;    // d_b x d_b, orthonormal
};

// Realignment U_{(a,b),(a',b')} -> R_{(a,a'),(b,b')}: the Schmidt
// decomposition of U becomes an ordinary SVD of R.
inline CMatrix reshuffle(const CMatrix& u, std::size_t d_a, std::size_t d_b) {
    if (u.rows() != d_a * d_b || u.cols() != d_a * d_b)
        throw std::invalid_argument("reshuffle: dimension mismatch");
    CMatrix r(d_a * d_a, d_b * d_b);
    for (std::size_t a = 0; a < d_a; ++a)
        for (std::size_t a2 = 0; a2 < d_a; ++a2)
            for (std::size_t b = 0; b < d_b; ++b)
                for (std::size_t b2 = 0; b2 < d_b; ++b2)
                    r(a * d_a + a2, b * d_b + b2) = u(a * d_b + b, a2 * d_b + b2);
    return r;
}

namespace detail {

// Lexicographic comparison of vectorized operators, (re, im) pairwise.
inline bool vec_lex_less(const CMatrix& x, const CMatrix& y) {
    for (std::size_t k = 0; k < x.data().size(); ++k) {
        const cx a = x.data()[k], b = y.data()[k];
        if (a.real() != b.real()) return a.real() < b.real();
        if (a.imag() != b.imag()) return a.imag() < b.imag();
    }
    return false;
}

}  // namespace detail

inline SchmidtDecomposition schmidt_decompose(const BipartiteUnitary& bu,
                                              const Tolerances& tol = {}) {
    const CMatrix r = reshuffle(bu.u, bu.d_a, bu.d_b);
    SvdResult d = svd(r);
    const int rank = rank_with_tol(d.s, tol);

    SchmidtDecomposition sd;
    sd.d_a = bu.d_a;
    sd.d_b = bu.d_b;
    sd.rank = rank;
    for (int n = 0; n < rank; ++n) {
        CMatrix a = unvec(d.u.col(n), bu.d_a, bu.d_a);
        CVector vb = d.v.col(n);
        for (auto& z : vb) z = std::conj(z);
        CMatrix b = unvec(vb, bu.d_b, bu.d_b);

        // Fix the pair's joint phase: largest-magnitude entry of b real
        // positive, the inverse phase absorbed into a.
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t k = 0; k < b.data().size(); ++k)
            if (std::abs(b.data()[k]) > best) {
                best = std::abs(b.data()[k]);
                arg = k;
            }
        const cx phase = b.data()[arg] / best;
        b = b * std::conj(phase);
        a = a * phase;

        sd.weights.push_back(d.s[n]);
        sd.a_ops.push_back(std::move(a));
        sd.b_ops.push_back(std::move(b));
    }

    // Deterministic order inside degenerate weight clusters.
    const double tie = 1e-10 * (sd.weights.empty() ? 1.0 : sd.weights[0]);
    for (int start = 0; start < rank;) {
        int stop = start + 1;
        while (stop < rank && sd.weights[start] - sd.weights[stop] <= tie) ++stop;
        for (int i = start; i < stop; ++i)
            for (int j = i + 1; j < stop; ++j)
                if (detail::vec_lex_less(sd.b_ops[j], sd.b_ops[i])) {
                    std::swap(sd.b_ops[i], sd.b_ops[j]);
                    std::swap(sd.a_ops[i], sd.a_ops[j]);
                    std::swap(sd.weights[i], sd.weights[j]);
                }
        start = stop;
    }
    return sd;
}

// Residuals of the two identities every unitary's decomposition satisfies:
// I_B = (1/d_A) sum_n w_n^2 B_n^dag B_n and sum_n w_n^2 = d_A d_B.
struct UnitarityIdentities {
    double completeness_residual = 0.0;  // max entry deviation from I_B
    double weight_sum_residual = 0.0;    // |sum w^2 - d_A d_B|
    bool ok = false;
};

inline UnitarityIdentities verify_unitarity_identities(const SchmidtDecomposition& sd,
                                                       double tol = 1e-8) {
    CMatrix acc(sd.d_b, sd.d_b);
    double wsum = 0.0;
    for (int n = 0; n < sd.rank; ++n) {
        const double w2 = sd.weights[n] * sd.weights[n];
        acc += w2 * (sd.b_ops[n].dagger() * sd.b_ops[n]);
        wsum += w2;
    }
    acc = acc * cx(1.0 / static_cast<double>(sd.d_a), 0.0);

    UnitarityIdentities r;
    r.completeness_residual = (acc - CMatrix::identity(sd.d_b)).max_abs();
    r.weight_sum_residual = std::abs(wsum - static_cast<double>(sd.d_a * sd.d_b));
    r.ok = r.completeness_residual <= tol && r.weight_sum_residual <= tol;
    return r;
}

// Two-qubit joint unitaries have Schmidt rank 1, 2, or 4; a computed rank of
// 3 signals a numerical-tolerance failure.
inline int two_qubit_rank_class(const BipartiteUnitary& bu, const Tolerances& tol = {}) {
    if (bu.d_a != 2 || bu.d_b != 2)
        throw precondition_error("two_qubit_rank_class: requires d_a = d_b = 2");
    const int rank = schmidt_decompose(bu, tol).rank;
    if (rank != 1 && rank != 2 && rank != 4)
        throw std::runtime_error("two_qubit_rank_class: computed rank " + std::to_string(rank) +
                                 " is not in {1,2,4}; tolerance failure");
    return rank;
}

}  // namespace ancilla
