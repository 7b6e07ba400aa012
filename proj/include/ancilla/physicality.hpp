#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ancilla/channel.hpp"
#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/opspace.hpp"
#include "ancilla/random.hpp"

namespace ancilla {

// P: every completely positive induced map forces a physical ancilla state.
enum class Verdict { P, NotP, PEmpirical, UndecidedByConditions };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::P: return "P";
        case Verdict::NotP: return "NOT_P";
        case Verdict::PEmpirical: return "P_EMPIRICAL";
        default: return "UNDECIDED_BY_CONDITIONS";
    }
}

struct SbSample {
    CVector phi;
    double margin;
};

struct PhysicalityReport {
    int r_u = 0;
    int dim_ob = 0;
    // Sufficient conditions for P:
    bool p1 = false;  // rank equals d_b^2
    bool p2 = false;  // rank exceeds d_b^2 - d_b
    // Sufficient conditions for not-P:
    bool q1 = false;  // nonzero Hermitian Sigma with tr(B_m^dag B_n Sigma) = 0
    bool q2 = false;  // products B_m^dag B_n do not span the operator space
    bool q3 = false;  // rank below d_b
    Verdict verdict = Verdict::UndecidedByConditions;
    std::vector<SbSample> sampled_sb_members;
    int samples_tested = 0;
};

namespace detail {

// Real parameterization of Hermitian d x d matrices: d diagonal entries,
// then (re, im) pairs for each i < j.
inline CMatrix hermitian_from_coords(const std::vector<double>& x, std::size_t d) {
    CMatrix h(d, d);
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i) h(i, i) = x[k++];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const double re = x[k++];
            const double im = x[k++];
            h(i, j) = cx(re, im);
            h(j, i) = cx(re, -im);
        }
    return h;
}

inline std::vector<CMatrix> hermitian_basis(std::size_t d) {
    std::vector<CMatrix> basis;
    const std::size_t n = d * d;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> x(n, 0.0);
        x[k] = 1.0;
        basis.push_back(hermitian_from_coords(x, d));
    }
    return basis;
}

// Products Q_nm = B_m^dag B_n for the decomposition's orthonormal B frame.
inline std::vector<CMatrix> b_products(const SchmidtDecomposition& sd) {
    std::vector<CMatrix> prods;
    prods.reserve(static_cast<std::size_t>(sd.rank) * sd.rank);
    for (int m = 0; m < sd.rank; ++m) {
        const CMatrix bmd = sd.b_ops[m].dagger();
        for (int n = 0; n < sd.rank; ++n) prods.push_back(bmd * sd.b_ops[n]);
    }
    return prods;
}

inline int b_product_span_dim(const SchmidtDecomposition& sd, const Tolerances& tol) {
    const auto prods = b_products(sd);
    const std::size_t n = sd.d_b * sd.d_b;
    CMatrix cols(n, prods.size());
    for (std::size_t j = 0; j < prods.size(); ++j) cols.set_col(j, vec(prods[j]));
    return matrix_rank(cols, tol);
}

}  // namespace detail

// Searches for a nonzero Hermitian Sigma with tr(B_m^dag B_n Sigma) = 0 for
// all n, m: the null space of the constraint map over the real Hermitian
// coordinates. Any hit is normalized to unit Frobenius norm.
inline std::optional<CMatrix> find_sigma_witness_q1(const SchmidtDecomposition& sd,
                                                    const Tolerances& tol = {}) {
    const std::size_t d = sd.d_b;
    const std::size_t ncoords = d * d;
    const auto prods = detail::b_products(sd);
    const auto basis = detail::hermitian_basis(d);

    // Rows: Re and Im of tr(Q_nm Sigma) per product; columns: coordinates.
    CMatrix design(2 * prods.size(), ncoords);
    for (std::size_t r = 0; r < prods.size(); ++r)
        for (std::size_t c = 0; c < ncoords; ++c) {
            const cx t = (prods[r] * basis[c]).trace();
            design(2 * r, c) = t.real();
            design(2 * r + 1, c) = t.imag();
        }

    SvdResult dec = svd(design);
    const int rank = rank_with_tol(dec.s, tol);
    if (static_cast<std::size_t>(rank) >= ncoords) return std::nullopt;

    // Deterministic representative: the trailing right-singular vector,
    // sign-fixed on its largest real coordinate.
    CVector nullvec = dec.v.col(ncoords - 1);
    std::vector<double> x(ncoords);
    for (std::size_t k = 0; k < ncoords; ++k) x[k] = nullvec[k].real();
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < ncoords; ++k)
        if (std::abs(x[k]) > best) {
            best = std::abs(x[k]);
            arg = k;
        }
    if (x[arg] < 0.0)
        for (auto& val : x) val = -val;

    CMatrix sigma = detail::hermitian_from_coords(x, d);
    const double norm = sigma.frobenius_norm();
    if (norm == 0.0) return std::nullopt;
    return sigma * cx(1.0 / norm, 0.0);
}

// Condition-only evaluation; the verdict is UndecidedByConditions when no
// sufficient condition fires.
inline PhysicalityReport evaluate_conditions(const SchmidtDecomposition& sd,
                                             const Tolerances& tol = {}) {
    PhysicalityReport rep;
    const int db2 = static_cast<int>(sd.d_b * sd.d_b);
    rep.r_u = sd.rank;
    rep.dim_ob = db2 - sd.rank;
    rep.p1 = (rep.dim_ob == 0);
    rep.p2 = (sd.rank > db2 - static_cast<int>(sd.d_b));
    rep.q3 = (sd.rank < static_cast<int>(sd.d_b));
    rep.q2 = (detail::b_product_span_dim(sd, tol) < db2);
    rep.q1 = find_sigma_witness_q1(sd, tol).has_value();

    if (rep.q1 || rep.q2 || rep.q3)
        rep.verdict = Verdict::NotP;
    else if (rep.p1 || rep.p2)
        rep.verdict = Verdict::P;
    else
        rep.verdict = Verdict::UndecidedByConditions;
    return rep;
}

// Haar-random membership sampling; returns the states found outside the cone.
inline std::vector<SbSample> sample_sb(const SchmidtDecomposition& sd, int n_samples,
                                       std::uint64_t seed, const Tolerances& tol = {}) {
    if (n_samples < 1) throw std::invalid_argument("sample_sb: n_samples must be >= 1");
    Rng rng(seed);
    std::vector<SbSample> hits;
    for (int k = 0; k < n_samples; ++k) {
        CVector phi = haar_state(sd.d_b, rng);
        const ConeMembership c = rank_one_in_cone(sd, phi, tol);
        if (!c.in_cone) hits.push_back(SbSample{std::move(phi), c.margin});
    }
    return hits;
}

// Unphysical ancilla operator certified to still give a CP system map.
struct AncillaWitness {
    CVector phi;            // the S_B member used as the negative eigenvector
    double delta = 0.0;     // cone margin consumed by the construction, < 1/2
    double epsilon = 0.0;   // magnitude of sigma's negative eigenvalue
    CMatrix sigma;          // unit trace, Hermitian, min eigenvalue -epsilon
    double cp_certificate = 0.0;  // min eigenvalue of the induced G matrix
};

// sigma = -eps |phi><phi| + (1+eps)/(d_b - 1) (I - |phi><phi|) with
// eps = delta / (d_b - 1 - delta d_b); delta is capped at 0.49 so the
// denominator stays positive for every d_b >= 2.
inline AncillaWitness construct_witness(const SchmidtDecomposition& sd, const CVector& phi,
                                        const Tolerances& tol = {}) {
    const ConeMembership c = rank_one_in_cone(sd, phi, tol);
    if (c.in_cone)
        throw precondition_error("construct_witness: phi is not in S_B (margin " +
                                 std::to_string(c.margin) + ")");
    const double db = static_cast<double>(sd.d_b);

    AncillaWitness w;
    w.phi = normalized(phi);
    w.delta = std::min(c.margin, 0.49);
    w.epsilon = w.delta / (db - 1.0 - w.delta * db);

    const CMatrix p = projector(w.phi);
    w.sigma = (-w.epsilon) * p + ((1.0 + w.epsilon) / (db - 1.0)) * (CMatrix::identity(sd.d_b) - p);
    w.cp_certificate = build_channel(sd, w.sigma, tol).min_g_eig;
    return w;
}

// Full decision: conditions, then sampling. A sampled member always forces
// NOT_P; with conditions silent and no hits, P is reported as empirical.
inline PhysicalityReport decide_physicality(const SchmidtDecomposition& sd, int n_samples,
                                            std::uint64_t seed, const Tolerances& tol = {}) {
    PhysicalityReport rep = evaluate_conditions(sd, tol);
    rep.sampled_sb_members = sample_sb(sd, n_samples, seed, tol);
    rep.samples_tested = n_samples;

    if (!rep.sampled_sb_members.empty())
        rep.verdict = Verdict::NotP;
    else if (rep.p1 || rep.p2)
        rep.verdict = Verdict::P;
    else if (rep.q1 || rep.q2 || rep.q3)
        rep.verdict = Verdict::NotP;
    else
        rep.verdict = Verdict::PEmpirical;
    return rep;
}

// Best witness candidate for a NOT_P unitary: the largest-margin state among
// the sampled members and, when q1 holds, the eigenvectors of Sigma_B.
inline std::optional<AncillaWitness> best_witness(const SchmidtDecomposition& sd,
                                                  const PhysicalityReport& rep,
                                                  const Tolerances& tol = {}) {
    CVector best;
    double best_margin = 0.0;
    for (const auto& s : rep.sampled_sb_members)
        if (s.margin > best_margin) {
            best_margin = s.margin;
            best = s.phi;
        }
    if (rep.q1) {
        if (auto sigma_b = find_sigma_witness_q1(sd, tol)) {
            const EigResult eig = herm_eig(*sigma_b, 1e-9);
            for (std::size_t k = 0; k < sd.d_b; ++k) {
                CVector cand = eig.vectors.col(k);
                const ConeMembership c = rank_one_in_cone(sd, cand, tol);
                if (!c.in_cone && c.margin > best_margin) {
                    best_margin = c.margin;
                    best = std::move(cand);
                }
            }
        }
    }
    if (best.empty() || best_margin <= tol.margin_tol) return std::nullopt;
    return construct_witness(sd, best, tol);
}

}  // namespace ancilla
