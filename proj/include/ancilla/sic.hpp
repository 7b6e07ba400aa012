#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/random.hpp"
#include "ancilla/weyl.hpp"

namespace ancilla {

struct SicCandidate {
    std::size_t d = 0;
    CVector fiducial;
    double max_overlap_error = 0.0;
};

// Max deviation of |<phi_kl | phi_k'l'>|^2 from 1/(d+1) over all ordered
// pairs of distinct Weyl translates phi_kl = X^k Z^l phi.
inline double sic_overlap_check(const CVector& phi, std::size_t d) {
    if (phi.size() != d) throw std::invalid_argument("sic_overlap_check: dimension mismatch");
    if (std::abs(vnorm(phi) - 1.0) > 1e-9)
        throw precondition_error("sic_overlap_check: phi not normalized");
    const WeylFamily wf(d);
    std::vector<CVector> translates;
    translates.reserve(d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) translates.push_back(mat_vec(wf.op(k, l), phi));

    const double target = 1.0 / static_cast<double>(d + 1);
    double worst = 0.0;
    for (std::size_t a = 0; a < translates.size(); ++a)
        for (std::size_t b = 0; b < translates.size(); ++b) {
            if (a == b) continue;
            const double ov = std::norm(vdot(translates[a], translates[b]));
            worst = std::max(worst, std::abs(ov - target));
        }
    return worst;
}

namespace detail {

struct SicObjective {
    std::size_t d;
    std::vector<CMatrix> ops;   // Weyl operators for (p,q) != (0,0)
    std::vector<CMatrix> dags;
    double target;

    explicit SicObjective(std::size_t dim) : d(dim), target(1.0 / static_cast<double>(dim + 1)) {
        const WeylFamily wf(d);
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = 0; q < d; ++q) {
                if (p == 0 && q == 0) continue;
                ops.push_back(wf.op(p, q));
                dags.push_back(ops.back().dagger());
            }
    }

    // Squared-error frame objective over difference classes; every ordered
    // pair of translates shares its overlap with one class, so this is the
    // pairwise sum up to a constant d^2 factor. Also reports the max
    // overlap deviation and the Wirtinger gradient d f / d phi*.
    void eval(const CVector& phi, double& f, double& max_err, CVector& grad) const {
        f = 0.0;
        max_err = 0.0;
        grad.assign(d, cx(0.0, 0.0));
        for (std::size_t t = 0; t < ops.size(); ++t) {
            const CVector wphi = mat_vec(ops[t], phi);
            const cx z = vdot(phi, wphi);
            const double dev = std::norm(z) - target;
            f += dev * dev;
            max_err = std::max(max_err, std::abs(dev));
            const CVector wdphi = mat_vec(dags[t], phi);
            const cx cz = std::conj(z);
            for (std::size_t i = 0; i < d; ++i)
                grad[i] += 2.0 * dev * (cz * wphi[i] + z * wdphi[i]);
        }
    }
};

inline double real_inner(const CVector& a, const CVector& b) { return vdot(a, b).real(); }

}  // namespace detail

// Projected gradient descent on the unit sphere with Barzilai-Borwein steps
// and random restarts. A restart is accepted once the max overlap error is
// at most 1e-7; the iteration itself aims a little lower to leave margin.
inline std::optional<SicCandidate> find_sic_fiducial(std::size_t d, std::uint64_t seed,
                                                     int max_iters = 5000, int restarts = 50) {
    if (d < 2 || d > 7)
        throw precondition_error("find_sic_fiducial: supported dimensions are 2..7");
    const detail::SicObjective obj(d);
    Rng rng(seed);

    for (int attempt = 0; attempt < restarts; ++attempt) {
        CVector phi = haar_state(d, rng);
        double f, err;
        CVector grad;
        obj.eval(phi, f, err, grad);

        CVector phi_prev, grad_prev;
        double eta = 0.05;
        for (int it = 0; it < max_iters && err > 1e-10; ++it) {
            // Tangent gradient on the sphere.
            CVector gt = grad;
            const double radial = detail::real_inner(phi, grad);
            for (std::size_t i = 0; i < d; ++i) gt[i] -= radial * phi[i];

            if (!phi_prev.empty()) {
                CVector s(d), y(d);
                for (std::size_t i = 0; i < d; ++i) {
                    s[i] = phi[i] - phi_prev[i];
                    y[i] = gt[i] - grad_prev[i];
                }
                const double sy = std::abs(detail::real_inner(s, y));
                const double yy = detail::real_inner(y, y);
                if (yy > 0.0 && sy > 0.0) eta = std::min(std::max(sy / yy, 1e-8), 1e3);
            }
            phi_prev = phi;
            grad_prev = gt;

            double f_new = f, err_new = err;
            CVector grad_new, phi_new;
            for (int halve = 0; halve < 40; ++halve) {
                phi_new = phi;
                for (std::size_t i = 0; i < d; ++i) phi_new[i] -= eta * gt[i];
                phi_new = normalized(phi_new);
                obj.eval(phi_new, f_new, err_new, grad_new);
                if (f_new <= f * (1.0 + 1e-3) || f_new < 1e-18) break;
                eta *= 0.5;
            }
            phi = std::move(phi_new);
            grad = std::move(grad_new);
            f = f_new;
            err = err_new;
        }

        if (err <= 1e-7) {
            // Phase convention: largest-magnitude component real positive.
            std::size_t arg = 0;
            double best = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                if (std::abs(phi[i]) > best) {
                    best = std::abs(phi[i]);
                    arg = i;
                }
            const cx phase = phi[arg] / best;
            for (auto& z : phi) z *= std::conj(phase);
            return SicCandidate{d, phi, sic_overlap_check(phi, d)};
        }
    }
    return std::nullopt;
}

struct GramBound {
    double phi_norm_inf = 0.0;   // ||sum_n |phi_n><phi_n| ||_inf over the subset
    double bound = 0.0;          // 1 + (R_U - 1)/sqrt(d+1)
    bool fiducial_in_sb = false; // phi_norm_inf strictly below d
};

// Spectral-norm bound for a subset of Weyl translates of a SIC fiducial.
// The spectrum of the projector sum is read off the R_U x R_U Gram matrix.
inline GramBound gram_bound_check(std::size_t d,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& subset,
                                  const CVector& phi, const Tolerances& tol = {}) {
    if (subset.empty()) throw std::invalid_argument("gram_bound_check: empty subset");
    if (sic_overlap_check(phi, d) > 1e-7)
        throw precondition_error("gram_bound_check: phi is not a SIC fiducial");

    const WeylFamily wf(d);
    std::vector<CVector> translates;
    for (const auto& [k, l] : subset) {
        if (k >= d || l >= d) throw std::invalid_argument("gram_bound_check: index out of range");
        translates.push_back(mat_vec(wf.op(k, l), phi));
    }
    const std::size_t r = translates.size();
    CMatrix gram(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) gram(a, b) = vdot(translates[a], translates[b]);

    GramBound g;
    g.phi_norm_inf = herm_eig(gram, 1e-8).values.back();
    g.bound = 1.0 + (static_cast<double>(r) - 1.0) / std::sqrt(static_cast<double>(d + 1));
    const double margin = 1.0 - g.phi_norm_inf / static_cast<double>(d);
    g.fiducial_in_sb = margin > tol.margin_tol;
    return g;
}

}  // namespace ancilla
