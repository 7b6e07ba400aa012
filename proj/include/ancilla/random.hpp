#pragma once

#include <cstdint>
#include <random>

#include "ancilla/matrix.hpp"

namespace ancilla {

// Seeded generator with a platform-independent Gaussian sampler.
// std::mt19937_64 output is pinned by the standard; the distributions are
// not, so Box-Muller is done by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cx(re, im);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-uniform state vector: normalized complex Gaussian components.
inline CVector haar_state(std::size_t d, Rng& rng) {
    CVector v(d);
    for (auto& z : v) z = rng.complex_gaussian();
    return normalized(v);
}

// Haar-uniform unitary: Gram-Schmidt of a complex Gaussian matrix.
inline CMatrix haar_unitary(std::size_t d, Rng& rng) {
    CMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    CMatrix q(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        CVector col = g.col(j);
        for (std::size_t prev = 0; prev < j; ++prev) {
            const CVector p = q.col(prev);
            const cx proj = vdot(p, col);
            for (std::size_t i = 0; i < d; ++i) col[i] -= proj * p[i];
        }
        q.set_col(j, normalized(col));
    }
    return q;
}

// Random Hermitian matrix with Gaussian entries (GUE-type).
inline CMatrix random_hermitian(std::size_t d, Rng& rng) {
    CMatrix h(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < d; ++j) {
            const cx z = 0.5 * rng.complex_gaussian();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

// Random traceless Hermitian with unit Frobenius norm.
inline CMatrix random_traceless_hermitian(std::size_t d, Rng& rng) {
    CMatrix h = random_hermitian(d, rng);
    const cx t = h.trace() * (1.0 / static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) h(i, i) -= t;
    const double n = h.frobenius_norm();
    return h * cx(1.0 / n, 0.0);
}

}  // namespace ancilla
