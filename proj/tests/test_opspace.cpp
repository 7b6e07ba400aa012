#include <catch_amalgamated.hpp>

#include "ancilla/opspace.hpp"
#include "ancilla/random.hpp"

using namespace ancilla;

namespace {

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = cx(0.0, -1.0);
    m(1, 0) = cx(0.0, 1.0);
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMatrix swap_matrix(std::size_t d) {
    CMatrix u(d * d, d * d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) u(k * d + j, j * d + k) = 1.0;
    return u;
}

BipartiteUnitary xx_rotation(double theta) {
    const CMatrix u =
        std::cos(theta / 2.0) * kron(CMatrix::identity(2), CMatrix::identity(2)) +
        cx(0.0, std::sin(theta / 2.0)) * kron(pauli_x(), pauli_x());
    return BipartiteUnitary(u, 2, 2);
}

BipartiteUnitary qutrit_qubit() {
    CMatrix u(6, 6);
    const std::vector<CMatrix> targets = {CMatrix::identity(2), pauli_x(), pauli_z()};
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t b2 = 0; b2 < 2; ++b2) u(c * 2 + b, c * 2 + b2) = targets[c](b, b2);
    return BipartiteUnitary(u, 3, 2);
}

CMatrix subspace_projector(const std::vector<CMatrix>& ops) {
    const std::size_t n = ops.front().rows() * ops.front().cols();
    CMatrix p(n, n);
    for (const auto& o : ops) {
        const double norm = o.frobenius_norm();
        CVector v = vec(o);
        for (auto& z : v) z /= norm;
        p += outer(v, v);
    }
    return p;
}

const CVector ket_plus = {cx(1.0 / std::sqrt(2.0), 0.0), cx(1.0 / std::sqrt(2.0), 0.0)};

}  // namespace

TEST_CASE("span_b dimensions for the canonical unitaries") {
    Rng rng(61);
    const CMatrix prod = kron(haar_unitary(2, rng), haar_unitary(3, rng));
    CHECK(span_b(schmidt_decompose(BipartiteUnitary(prod, 2, 3))).dim() == 1);

    CHECK(span_b(schmidt_decompose(BipartiteUnitary(swap_matrix(2), 2, 2))).dim() == 4);

    const OperatorSubspace s3 = span_b(schmidt_decompose(xx_rotation(1.2)));
    CHECK(s3.dim() == 2);
    // Basis-independent: projector onto span{I, X}/sqrt2 matches.
    const CMatrix expected = subspace_projector({CMatrix::identity(2), pauli_x()});
    CHECK((subspace_projector(s3.basis) - expected).max_abs() < 1e-9);
}

TEST_CASE("orthocomplement matches the known spans") {
    // XX rotation: complement is span{Y, Z}.
    const OperatorSubspace ob = orthocomplement(span_b(schmidt_decompose(xx_rotation(0.9))));
    REQUIRE(ob.dim() == 2);
    const CMatrix expected = subspace_projector({pauli_y(), pauli_z()});
    CHECK((subspace_projector(ob.basis) - expected).max_abs() < 1e-9);

    // SWAP: complement is the zero subspace.
    CHECK(orthocomplement(span_b(schmidt_decompose(BipartiteUnitary(swap_matrix(2), 2, 2)))).dim() ==
          0);

    // Qutrit-qubit {I, X, Z} control: complement is the multiples of Y.
    const OperatorSubspace ob4 = orthocomplement(span_b(schmidt_decompose(qutrit_qubit())));
    REQUIRE(ob4.dim() == 1);
    CHECK((subspace_projector(ob4.basis) - subspace_projector({pauli_y()})).max_abs() < 1e-9);
}

TEST_CASE("dimension identity dim(span) + dim(complement) = d_b^2") {
    Rng rng(67);
    std::vector<BipartiteUnitary> cases;
    cases.push_back(BipartiteUnitary(swap_matrix(3), 3, 3));
    cases.push_back(xx_rotation(2.0));
    cases.push_back(qutrit_qubit());
    cases.push_back(BipartiteUnitary(haar_unitary(6, rng), 3, 2));
    for (const auto& bu : cases) {
        const OperatorSubspace s = span_b(schmidt_decompose(bu));
        CHECK(s.dim() + orthocomplement(s).dim() == bu.d_b * bu.d_b);
    }
}

TEST_CASE("projecting onto the span then the complement gives zero") {
    Rng rng(71);
    const OperatorSubspace s = span_b(schmidt_decompose(qutrit_qubit()));
    const OperatorSubspace ob = orthocomplement(s);
    for (int rep = 0; rep < 10; ++rep) {
        CMatrix o(2, 2);
        for (auto& z : o.data()) z = rng.complex_gaussian();
        CMatrix onto_span(2, 2);
        for (const auto& b : s.basis) onto_span += hs_inner(b, o) * b;
        cx leak = 0.0;
        for (const auto& b : ob.basis) leak += hs_inner(b, onto_span);
        CHECK(std::abs(leak) < 1e-9);
    }
}

TEST_CASE("generated subspace for the XX rotation") {
    const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(3.14159265358979323846 / 2.0));
    const OperatorSubspace ob = orthocomplement(span_b(sd));

    // Y|0>, Z|0> are linearly independent.
    CHECK(generated_subspace(ob, basis_state(2, 0)).dim() == 2);
    // Y|+> and Z|+> are both proportional to |->.
    CHECK(generated_subspace(ob, ket_plus).dim() == 1);

    CVector unnormalized = {cx(1.0, 0.0), cx(1.0, 0.0)};
    CHECK_THROWS_AS(generated_subspace(ob, unnormalized), precondition_error);
}

TEST_CASE("generated subspace is zero when the complement is zero") {
    const SchmidtDecomposition sd = schmidt_decompose(BipartiteUnitary(swap_matrix(2), 2, 2));
    const OperatorSubspace ob = orthocomplement(span_b(sd));
    Rng rng(73);
    CHECK(generated_subspace(ob, haar_state(2, rng)).dim() == 0);
}

TEST_CASE("rank_one_in_cone on the XX rotation") {
    const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(3.14159265358979323846 / 2.0));

    const ConeMembership plus = rank_one_in_cone(sd, ket_plus);
    CHECK(plus.in_cone);
    CHECK(plus.margin <= 1e-9);

    // Gram of {I|0>/sqrt2, X|0>/sqrt2} is diag(1/2, 1/2): margin exactly 1/2.
    const ConeMembership zero = rank_one_in_cone(sd, basis_state(2, 0));
    CHECK_FALSE(zero.in_cone);
    CHECK(zero.margin == Catch::Approx(0.5).margin(1e-10));
}

TEST_CASE("rank_one_in_cone accepts every state for SWAP") {
    const SchmidtDecomposition sd = schmidt_decompose(BipartiteUnitary(swap_matrix(2), 2, 2));
    Rng rng(79);
    for (int rep = 0; rep < 50; ++rep) {
        const ConeMembership c = rank_one_in_cone(sd, haar_state(2, rng));
        CHECK(c.in_cone);
        CHECK(c.margin <= 1e-9);
    }
}

TEST_CASE("spectral and generated-subspace characterizations agree") {
    Rng rng(83);
    std::vector<BipartiteUnitary> cases;
    cases.push_back(BipartiteUnitary(swap_matrix(2), 2, 2));
    cases.push_back(xx_rotation(1.3));
    cases.push_back(qutrit_qubit());
    cases.push_back(BipartiteUnitary(kron(haar_unitary(2, rng), haar_unitary(3, rng)), 2, 3));
    for (const auto& bu : cases) {
        const SchmidtDecomposition sd = schmidt_decompose(bu);
        const OperatorSubspace ob = orthocomplement(span_b(sd));
        for (int rep = 0; rep < 200; ++rep) {
            const CVector phi = haar_state(bu.d_b, rng);
            const bool outside = !rank_one_in_cone(sd, phi).in_cone;
            const bool full = generated_subspace(ob, phi).dim() == bu.d_b;
            CHECK(outside == full);
        }
    }
}

TEST_CASE("Gram spectrum equals the projector-sum spectrum") {
    Rng rng(89);
    const SchmidtDecomposition sd = schmidt_decompose(qutrit_qubit());
    for (int rep = 0; rep < 20; ++rep) {
        const CVector phi = haar_state(2, rng);

        CMatrix sum(2, 2);
        for (int n = 0; n < sd.rank; ++n) {
            const CVector chi = mat_vec(sd.b_ops[n], phi);
            sum += outer(chi, chi);
        }
        const EigResult direct = herm_eig(sum, 1e-9);

        CMatrix gram(sd.rank, sd.rank);
        for (int n = 0; n < sd.rank; ++n)
            for (int m = 0; m < sd.rank; ++m)
                gram(n, m) = vdot(mat_vec(sd.b_ops[n], phi), mat_vec(sd.b_ops[m], phi));
        const EigResult via_gram = herm_eig(gram, 1e-9);

        // Nonzero spectra coincide; the Gram matrix here is 3x3 vs 2x2.
        CHECK(via_gram.values.back() == Catch::Approx(direct.values.back()).margin(1e-9));
        CHECK(via_gram.values[1] == Catch::Approx(direct.values[0]).margin(1e-9));
        CHECK(std::abs(via_gram.values[0]) < 1e-9);
    }
}
