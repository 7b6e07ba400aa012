#pragma once

#include <optional>
#include <vector>

#include "ancilla/channel.hpp"
#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/physicality.hpp"
#include "ancilla/schmidt.hpp"

namespace ancilla {

// U allows indirect tomography iff the products B_m^dag B_n span the full
// operator space on B, i.e. iff G determines sigma uniquely.
struct TomographyVerdict {
    bool allows = false;
    int span_dim = 0;
};

inline TomographyVerdict allows_indirect_tomography(const SchmidtDecomposition& sd,
                                                    const Tolerances& tol = {}) {
    TomographyVerdict v;
    v.span_dim = detail::b_product_span_dim(sd, tol);
    v.allows = (v.span_dim == static_cast<int>(sd.d_b * sd.d_b));
    return v;
}

struct SigmaReconstruction {
    bool unique = false;
    std::optional<CMatrix> sigma;  // present only when unique
    double residual = 0.0;         // Frobenius mismatch ||G(sigma) - G||
};

// Least squares for tr(B_n sigma B_m^dag) = G_nm over Hermitian unit-trace
// sigma. The trace constraint is eliminated by substituting the last
// diagonal entry, so the solution is exactly Hermitian with trace one.
inline SigmaReconstruction reconstruct_sigma(const SchmidtDecomposition& sd, const CMatrix& g,
                                             const Tolerances& tol = {}) {
    if (g.rows() != static_cast<std::size_t>(sd.rank) ||
        g.cols() != static_cast<std::size_t>(sd.rank))
        throw std::invalid_argument("reconstruct_sigma: G must be rank x rank");
    if (!g.is_hermitian(1e-8)) throw validation_error("reconstruct_sigma: G not Hermitian");

    const std::size_t d = sd.d_b;
    const std::size_t nfree = d * d - 1;
    const auto prods = detail::b_products(sd);  // Q_nm = B_m^dag B_n, tr(Q sigma) = G_nm

    // Free coordinates: diagonal entries 0..d-2 (the last is 1 - their sum),
    // then (re, im) off-diagonal pairs.
    std::vector<CMatrix> dirs;
    const CMatrix last = outer(basis_state(d, d - 1), basis_state(d, d - 1));
    for (std::size_t j = 0; j + 1 < d; ++j)
        dirs.push_back(outer(basis_state(d, j), basis_state(d, j)) - last);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            CMatrix re(d, d), im(d, d);
            re(i, j) = 1.0;
            re(j, i) = 1.0;
            im(i, j) = cx(0.0, 1.0);
            im(j, i) = cx(0.0, -1.0);
            dirs.push_back(re);
            dirs.push_back(im);
        }

    CMatrix design(2 * prods.size(), nfree);
    CVector rhs(2 * prods.size());
    for (std::size_t r = 0; r < prods.size(); ++r) {
        for (std::size_t c = 0; c < nfree; ++c) {
            const cx t = (prods[r] * dirs[c]).trace();
            design(2 * r, c) = t.real();
            design(2 * r + 1, c) = t.imag();
        }
        const int n = static_cast<int>(r) % sd.rank;
        const int m = static_cast<int>(r) / sd.rank;
        const cx target = g(n, m) - (prods[r] * last).trace();
        rhs[2 * r] = target.real();
        rhs[2 * r + 1] = target.imag();
    }

    SigmaReconstruction rec;
    const SvdResult dec = svd(design);
    rec.unique = (rank_with_tol(dec.s, tol) == static_cast<int>(nfree));
    if (!rec.unique) return rec;

    const CVector x = least_squares(design, rhs, tol);
    CMatrix sigma = last;
    for (std::size_t c = 0; c < nfree; ++c) sigma += x[c].real() * dirs[c];

    double res2 = 0.0;
    for (std::size_t r = 0; r < prods.size(); ++r) {
        const int n = static_cast<int>(r) % sd.rank;
        const int m = static_cast<int>(r) / sd.rank;
        res2 += std::norm((prods[r] * sigma).trace() - g(n, m));
    }
    rec.residual = std::sqrt(res2);
    rec.sigma = std::move(sigma);
    return rec;
}

// Linear process tomography: drive the channel with the outer-product basis
// |e_n><e_n'| and assemble the Choi matrix from the outputs.
inline CMatrix process_tomography(const SchmidtDecomposition& sd, const CMatrix& sigma,
                                  const Tolerances& tol = {}) {
    const ChannelRep ch = build_channel(sd, sigma, tol);
    const std::size_t d = sd.d_a;
    CMatrix choi(d * d, d * d);
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t n2 = 0; n2 < d; ++n2) {
            const CMatrix out = apply_channel(ch, outer(basis_state(d, n), basis_state(d, n2)));
            for (std::size_t m = 0; m < d; ++m)
                for (std::size_t m2 = 0; m2 < d; ++m2)
                    choi(n * d + m, n2 * d + m2) = out(m, m2);
        }
    return choi;
}

}  // namespace ancilla
