#pragma once

#include <map>
#include <string>
#include <vector>

#include "ancilla/matrix.hpp"
#include "ancilla/random.hpp"
#include "ancilla/schmidt.hpp"
#include "ancilla/weyl.hpp"

namespace ancilla {

// Pauli-type operators for the two-dimensional subspace spanned by |j>, |k>.
struct SubspacePaulis {
    CMatrix i_jk;  // tau_jj + tau_kk
    CMatrix z_jk;  // tau_jj - tau_kk
    CMatrix x_jk;  // tau_jk + tau_kj
    CMatrix y_jk;  // -i (tau_jk - tau_kj)
};

inline SubspacePaulis subspace_paulis(std::size_t d, std::size_t j, std::size_t k) {
    if (!(j < k && k < d))
        throw std::invalid_argument("subspace_paulis: need 0 <= j < k < d");
    SubspacePaulis p{CMatrix(d, d), CMatrix(d, d), CMatrix(d, d), CMatrix(d, d)};
    p.i_jk(j, j) = 1.0;
    p.i_jk(k, k) = 1.0;
    p.z_jk(j, j) = 1.0;
    p.z_jk(k, k) = -1.0;
    p.x_jk(j, k) = 1.0;
    p.x_jk(k, j) = 1.0;
    p.y_jk(j, k) = cx(0.0, -1.0);
    p.y_jk(k, j) = cx(0.0, 1.0);
    return p;
}

// Associated unitaries: U_j flips the sign of |j>; V_jk and W_jk act as the
// subspace Pauli X and Y on {|j>, |k>} and as the identity elsewhere.
inline CMatrix unitary_u(std::size_t d, std::size_t j) {
    if (j < 1 || j >= d) throw std::invalid_argument("unitary_u: need 1 <= j < d");
    CMatrix m = CMatrix::identity(d);
    m(j, j) = -1.0;
    return m;
}

inline CMatrix unitary_v(std::size_t d, std::size_t j, std::size_t k) {
    const SubspacePaulis p = subspace_paulis(d, j, k);
    return CMatrix::identity(d) - p.i_jk + p.x_jk;
}

inline CMatrix unitary_w(std::size_t d, std::size_t j, std::size_t k) {
    const SubspacePaulis p = subspace_paulis(d, j, k);
    return CMatrix::identity(d) - p.i_jk + p.y_jk;
}

// Primed variants used by the 2 d_B construction.
inline CMatrix unitary_u1_prime(std::size_t d) {
    const SubspacePaulis p = subspace_paulis(d, 0, 1);
    return CMatrix::identity(d) - p.i_jk - p.z_jk;
}

inline CMatrix unitary_w_prime(std::size_t d, std::size_t j) {
    const SubspacePaulis p = subspace_paulis(d, 0, j);
    return CMatrix::identity(d) - p.i_jk - cx(0.0, 1.0) * p.y_jk;
}

// Controlled unitary sum_c |c><c| (x) targets[c] on A (x) B.
inline CMatrix controlled_unitary(const std::vector<CMatrix>& targets, std::size_t d_b) {
    const std::size_t d_a = targets.size();
    CMatrix u(d_a * d_b, d_a * d_b);
    for (std::size_t c = 0; c < d_a; ++c)
        for (std::size_t b = 0; b < d_b; ++b)
            for (std::size_t b2 = 0; b2 < d_b; ++b2)
                u(c * d_b + b, c * d_b + b2) = targets[c](b, b2);
    return u;
}

// Facts each constructed unitary is expected to satisfy under analysis.
struct ExpectedFacts {
    int rank = 0;
    bool property_p = false;      // S_B empty
    bool allows_tomography = false;
    std::vector<CVector> sb_members;
    std::vector<CVector> sb_non_members;
};

struct GalleryEntry {
    std::string name;
    BipartiteUnitary unitary;
    ExpectedFacts expected;
};

namespace detail {

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline std::size_t size_param(const std::map<std::string, double>& params, const std::string& key,
                              std::size_t fallback) {
    const double v = param_or(params, key, static_cast<double>(fallback));
    if (v < 1.0 || v != std::floor(v))
        throw precondition_error("gallery: parameter '" + key + "' must be a positive integer");
    return static_cast<std::size_t>(v);
}

inline CVector plus_state(std::size_t d, std::size_t j, std::size_t k, cx rel = cx(1.0, 0.0)) {
    CVector v(d, cx(0.0, 0.0));
    v[j] = 1.0 / std::sqrt(2.0);
    v[k] = rel / std::sqrt(2.0);
    return v;
}

}  // namespace detail

// Families:
//   product      d_a, d_b, seed    U_A (x) U_B, Haar factors
//   swap         d                 SWAP on d x d
//   example3     theta             exp(i theta X (x) X / 2) on two qubits
//   example4     -                 qutrit control of {I, X, Z} on a qubit
//   example5     d_b               controlled {I, U_j, V_0j, W_0j}, rank 3 d_b - 2
//   example6     d_b               controlled {I, U'_1, V_0j, W'_0j}, rank 2 d_b
//   example7     d_b               rank d_b^2 - d_b with S_B nonempty
//   example8     d_b               Weyl-controlled {I, Z..Z^{d-1}, X..X^{d-1}}
inline GalleryEntry make_example(const std::string& name,
                                 const std::map<std::string, double>& params = {}) {
    using detail::plus_state;
    using detail::size_param;

    if (name == "product" || name == "example1") {
        const std::size_t d_a = size_param(params, "d_a", 2);
        const std::size_t d_b = size_param(params, "d_b", 2);
        if (d_b < 2) throw precondition_error("gallery product: d_b must be >= 2");
        Rng rng(static_cast<std::uint64_t>(detail::param_or(params, "seed", 11.0)));
        const CMatrix u = kron(haar_unitary(d_a, rng), haar_unitary(d_b, rng));
        ExpectedFacts f;
        f.rank = 1;
        f.property_p = false;
        f.allows_tomography = false;
        f.sb_members = {basis_state(d_b, 0), plus_state(d_b, 0, d_b - 1)};
        return GalleryEntry{"product", BipartiteUnitary(u, d_a, d_b), f};
    }

    if (name == "swap" || name == "example2") {
        const std::size_t d = size_param(params, "d", 2);
        if (d < 2) throw precondition_error("gallery swap: d must be >= 2");
        CMatrix u(d * d, d * d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) u(k * d + j, j * d + k) = 1.0;
        ExpectedFacts f;
        f.rank = static_cast<int>(d * d);
        f.property_p = true;
        f.allows_tomography = true;
        f.sb_non_members = {basis_state(d, 0), plus_state(d, 0, d - 1)};
        return GalleryEntry{"swap", BipartiteUnitary(u, d, d), f};
    }

    if (name == "example3") {
        const double theta = detail::param_or(params, "theta", 1.5707963267948966);
        if (!(theta > 0.0 && theta < 3.14159265358979323846))
            throw precondition_error("gallery example3: theta must lie in (0, pi)");
        const WeylFamily qubit(2);
        const CMatrix x = qubit.shift();
        const CMatrix u = std::cos(theta / 2.0) * kron(CMatrix::identity(2), CMatrix::identity(2)) +
                          cx(0.0, std::sin(theta / 2.0)) * kron(x, x);
        ExpectedFacts f;
        f.rank = 2;
        f.property_p = false;
        f.allows_tomography = false;
        f.sb_members = {basis_state(2, 0), basis_state(2, 1), plus_state(2, 0, 1, cx(0.0, 1.0))};
        f.sb_non_members = {plus_state(2, 0, 1), plus_state(2, 0, 1, cx(-1.0, 0.0))};
        return GalleryEntry{"example3", BipartiteUnitary(u, 2, 2), f};
    }

    if (name == "example4") {
        const WeylFamily qubit(2);
        const CMatrix u =
            controlled_unitary({CMatrix::identity(2), qubit.shift(), qubit.phase()}, 2);
        ExpectedFacts f;
        f.rank = 3;
        f.property_p = true;
        f.allows_tomography = true;
        f.sb_non_members = {basis_state(2, 0), plus_state(2, 0, 1)};
        return GalleryEntry{"example4", BipartiteUnitary(u, 3, 2), f};
    }

    if (name == "example5") {
        const std::size_t d = size_param(params, "d_b", 3);
        if (d < 2) throw precondition_error("gallery example5: d_b must be >= 2");
        std::vector<CMatrix> targets{CMatrix::identity(d)};
        for (std::size_t j = 1; j < d; ++j) targets.push_back(unitary_u(d, j));
        for (std::size_t j = 1; j < d; ++j) targets.push_back(unitary_v(d, 0, j));
        for (std::size_t j = 1; j < d; ++j) targets.push_back(unitary_w(d, 0, j));
        ExpectedFacts f;
        f.rank = static_cast<int>(3 * d - 2);
        f.property_p = true;
        f.allows_tomography = true;
        f.sb_non_members = {basis_state(d, 0), basis_state(d, d - 1), plus_state(d, 0, d - 1)};
        return GalleryEntry{"example5", BipartiteUnitary(controlled_unitary(targets, d), 3 * d - 2, d),
                            f};
    }

    if (name == "example6") {
        const std::size_t d = size_param(params, "d_b", 3);
        if (d < 2) throw precondition_error("gallery example6: d_b must be >= 2");
        std::vector<CMatrix> targets{CMatrix::identity(d), unitary_u1_prime(d)};
        for (std::size_t j = 1; j < d; ++j) targets.push_back(unitary_v(d, 0, j));
        for (std::size_t j = 1; j < d; ++j) targets.push_back(unitary_w_prime(d, j));
        ExpectedFacts f;
        f.rank = static_cast<int>(2 * d);
        f.property_p = true;
        f.allows_tomography = true;
        f.sb_non_members = {basis_state(d, 0), plus_state(d, 0, d - 1)};
        return GalleryEntry{"example6", BipartiteUnitary(controlled_unitary(targets, d), 2 * d, d),
                            f};
    }

    if (name == "example7") {
        const std::size_t d = size_param(params, "d_b", 3);
        if (d < 2) throw precondition_error("gallery example7: d_b must be >= 2");
        std::vector<CMatrix> targets{CMatrix::identity(d)};
        for (std::size_t j = 1; j < d; ++j) targets.push_back(unitary_u(d, j));
        for (std::size_t j = 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) targets.push_back(unitary_v(d, j, k));
        for (std::size_t j = 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) targets.push_back(unitary_w(d, j, k));
        for (std::size_t j = 2; j < d; ++j) targets.push_back(unitary_w(d, 0, j));
        ExpectedFacts f;
        f.rank = static_cast<int>(d * d - d);
        f.property_p = false;
        f.allows_tomography = true;
        f.sb_members = {plus_state(d, 0, 1)};
        f.sb_non_members = {basis_state(d, 0), basis_state(d, 1)};
        if (d >= 3) f.sb_non_members.push_back(basis_state(d, 2));
        return GalleryEntry{"example7",
                            BipartiteUnitary(controlled_unitary(targets, d), d * d - d, d), f};
    }

    if (name == "example8") {
        const std::size_t d = size_param(params, "d_b", 3);
        if (d < 3) throw precondition_error("gallery example8: d_b must be >= 3");
        const WeylFamily wf(d);
        std::vector<CMatrix> targets{CMatrix::identity(d)};
        for (std::size_t l = 1; l < d; ++l) targets.push_back(wf.op(0, l));
        for (std::size_t k = 1; k < d; ++k) targets.push_back(wf.op(k, 0));
        ExpectedFacts f;
        f.rank = static_cast<int>(2 * d - 1);
        f.property_p = false;
        f.allows_tomography = true;
        f.sb_members = {plus_state(d, 0, 1)};
        f.sb_non_members.push_back(basis_state(d, 0));          // Z eigenstate
        f.sb_non_members.push_back(wf.fourier_state(0));        // X eigenstate
        f.sb_non_members.push_back(wf.fourier_state(1));
        return GalleryEntry{"example8",
                            BipartiteUnitary(controlled_unitary(targets, d), 2 * d - 1, d), f};
    }

    throw validation_error("unknown gallery example '" + name + "'");
}

// The fixed matrix of entries exercised by the regression verb and the
// acceptance suite.
inline std::vector<GalleryEntry> standard_gallery() {
    std::vector<GalleryEntry> g;
    g.push_back(make_example("product"));
    for (double d : {2.0, 3.0, 4.0}) g.push_back(make_example("swap", {{"d", d}}));
    g.push_back(make_example("example3"));
    g.push_back(make_example("example4"));
    for (double d : {3.0, 4.0, 5.0}) g.push_back(make_example("example5", {{"d_b", d}}));
    for (double d : {3.0, 4.0, 5.0}) g.push_back(make_example("example6", {{"d_b", d}}));
    for (double d : {3.0, 4.0, 5.0}) g.push_back(make_example("example7", {{"d_b", d}}));
    for (double d : {3.0, 4.0, 5.0}) g.push_back(make_example("example8", {{"d_b", d}}));
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto& e = g[i];
        if (e.unitary.d_a != e.unitary.d_b || e.name == "swap") {
            std::string tag = e.name + "(d_a=" + std::to_string(e.unitary.d_a) +
                              ",d_b=" + std::to_string(e.unitary.d_b) + ")";
            e.name = tag;
        }
    }
    return g;
}

}  // namespace ancilla
