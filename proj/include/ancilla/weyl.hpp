#pragma once

#include <vector>

#include "ancilla/matrix.hpp"

namespace ancilla {

// Shift/phase (generalized Pauli) operators: X|j> = |j+1 mod d>,
// Z|j> = exp(2 pi i j / d)|j>, and the Weyl family B_kl = X^k Z^l.
struct WeylFamily {
    std::size_t d;

    explicit WeylFamily(std::size_t dim) : d(dim) {
        if (d < 2) throw std::invalid_argument("WeylFamily: dimension must be >= 2");
    }

    static cx root_of_unity(std::size_t d, long long power) {
        const double angle = 2.0 * 3.14159265358979323846 *
                             static_cast<double>(power % static_cast<long long>(d)) /
                             static_cast<double>(d);
        return cx(std::cos(angle), std::sin(angle));
    }

    CMatrix shift() const { return op(1, 0); }
    CMatrix phase() const { return op(0, 1); }

    // X^k Z^l: entry ((j+k) mod d, j) = omega^(l j).
    CMatrix op(std::size_t k, std::size_t l) const {
        CMatrix m(d, d);
        for (std::size_t j = 0; j < d; ++j)
            m((j + k) % d, j) = root_of_unity(d, static_cast<long long>(l * j));
        return m;
    }

    // All d^2 operators in (k, l) lexicographic order.
    std::vector<CMatrix> all() const {
        std::vector<CMatrix> ops;
        ops.reserve(d * d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) ops.push_back(op(k, l));
        return ops;
    }

    // Fourier-transformed basis state: the X eigenstate with eigenvalue
    // exp(-2 pi i k / d).
    CVector fourier_state(std::size_t k) const {
        CVector v(d);
        const double root = 1.0 / std::sqrt(static_cast<double>(d));
        for (std::size_t j = 0; j < d; ++j)
            v[j] = root * root_of_unity(d, static_cast<long long>(j * k));
        return v;
    }
};

}  // namespace ancilla
