#pragma once

#include <vector>

#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/schmidt.hpp"

namespace ancilla {

// The system map induced by (U, sigma): E(rho) = sum_nm G_nm A_n rho A_m^dag,
// with G_nm = tr(B_n sigma B_m^dag). The weights are absorbed into the A side
// (a_ops[n] = w_n * schmidt a_op), leaving the B side orthonormal.
struct ChannelRep {
    std::size_t d_a = 0;
    std::size_t d_b = 0;
    int rank = 0;
    CMatrix g;                    // rank x rank, Hermitian for Hermitian sigma
    std::vector<CMatrix> a_ops;   // weight-absorbing Schmidt operators on A
    std::vector<CMatrix> kraus;   // populated only when cp
    CMatrix choi;                 // (d_a^2) x (d_a^2), unnormalized |Psi> convention
    bool cp = false;
    bool tp = false;
    double min_g_eig = 0.0;
    double min_choi_eig = 0.0;
};

namespace detail {

// Column-major vectorization matching |O> = (I (x) O)|Psi>,
// |Psi> = sum_n |n>|n> unnormalized: component (r, q) holds O(q, r).
inline CVector choi_vec(const CMatrix& op) {
    const std::size_t d = op.rows();
    CVector v(d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t q = 0; q < d; ++q) v[r * d + q] = op(q, r);
    return v;
}

inline CMatrix choi_unvec(const CVector& v, std::size_t d) {
    CMatrix op(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t q = 0; q < d; ++q) op(q, r) = v[r * d + q];
    return op;
}

}  // namespace detail

inline ChannelRep build_channel(const SchmidtDecomposition& sd, const CMatrix& sigma,
                                const Tolerances& tol = {}) {
    if (sigma.rows() != sd.d_b || sigma.cols() != sd.d_b)
        throw std::invalid_argument("build_channel: sigma dimension mismatch");
    if (!sigma.all_finite()) throw validation_error("build_channel: non-finite sigma");
    if (!sigma.is_hermitian(tol.herm_tol))
        throw validation_error("build_channel: sigma not Hermitian");
    if (std::abs(sigma.trace() - cx(1.0, 0.0)) > 1e-9)
        throw validation_error("build_channel: sigma does not have unit trace");

    ChannelRep ch;
    ch.d_a = sd.d_a;
    ch.d_b = sd.d_b;
    ch.rank = sd.rank;
    for (int n = 0; n < sd.rank; ++n) ch.a_ops.push_back(sd.weights[n] * sd.a_ops[n]);

    ch.g = CMatrix(sd.rank, sd.rank);
    for (int n = 0; n < sd.rank; ++n) {
        const CMatrix bs = sd.b_ops[n] * sigma;
        for (int m = 0; m < sd.rank; ++m) ch.g(n, m) = hs_inner(sd.b_ops[m], bs);
    }

    const EigResult geig = herm_eig(ch.g, 1e-8);
    ch.min_g_eig = geig.values.front();
    ch.cp = ch.min_g_eig >= -tol.psd_tol;

    // Choi matrix: sum_nm G_nm |A_n><A_m| over the column-major vectorization.
    const std::size_t da2 = sd.d_a * sd.d_a;
    ch.choi = CMatrix(da2, da2);
    std::vector<CVector> avecs(sd.rank);
    for (int n = 0; n < sd.rank; ++n) avecs[n] = detail::choi_vec(ch.a_ops[n]);
    for (int n = 0; n < sd.rank; ++n)
        for (int m = 0; m < sd.rank; ++m) {
            const cx gnm = ch.g(n, m);
            if (gnm == cx(0.0, 0.0)) continue;
            for (std::size_t i = 0; i < da2; ++i)
                for (std::size_t j = 0; j < da2; ++j)
                    ch.choi(i, j) += gnm * avecs[n][i] * std::conj(avecs[m][j]);
        }

    const EigResult ceig = herm_eig(ch.choi, 1e-7);
    ch.min_choi_eig = ceig.values.front();

    ch.tp = (partial_trace(ch.choi, sd.d_a, sd.d_a, Keep::A) - CMatrix::identity(sd.d_a))
                .max_abs() <= 1e-8;

    if (ch.cp) {
        for (std::size_t k = da2; k-- > 0;) {
            if (ceig.values[k] <= tol.psd_tol) continue;
            CVector kv = ceig.vectors.col(k);
            const double scale = std::sqrt(ceig.values[k]);
            for (auto& z : kv) z *= scale;
            ch.kraus.push_back(detail::choi_unvec(kv, sd.d_a));
        }
    }
    return ch;
}

// Ordinary action E(rho) = sum_nm G_nm A_n rho A_m^dag. rho may be any
// d_a x d_a matrix (process tomography feeds non-Hermitian basis elements).
inline CMatrix apply_channel(const ChannelRep& ch, const CMatrix& rho) {
    if (rho.rows() != ch.d_a || rho.cols() != ch.d_a)
        throw std::invalid_argument("apply_channel: rho dimension mismatch");
    CMatrix out(ch.d_a, ch.d_a);
    for (int n = 0; n < ch.rank; ++n) {
        const CMatrix left = ch.a_ops[n] * rho;
        for (int m = 0; m < ch.rank; ++m) {
            const cx gnm = ch.g(n, m);
            if (gnm == cx(0.0, 0.0)) continue;
            out += gnm * (left * ch.a_ops[m].dagger());
        }
    }
    return out;
}

inline CMatrix choi_of(const SchmidtDecomposition& sd, const CMatrix& sigma,
                       const Tolerances& tol = {}) {
    return build_channel(sd, sigma, tol).choi;
}

inline std::vector<CMatrix> kraus_of(const ChannelRep& ch) {
    if (!ch.cp)
        throw precondition_error("kraus_of: channel is not completely positive; "
                                 "no Kraus decomposition exists");
    return ch.kraus;
}

}  // namespace ancilla
