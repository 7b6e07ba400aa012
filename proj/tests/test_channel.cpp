#include <catch_amalgamated.hpp>

#include "ancilla/channel.hpp"
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

// The independent route: evolve the joint state and trace out the ancilla.
CMatrix brute_force_map(const BipartiteUnitary& bu, const CMatrix& rho, const CMatrix& sigma) {
    return partial_trace(bu.u * kron(rho, sigma) * bu.u.dagger(), bu.d_a, bu.d_b, Keep::A);
}

CMatrix bloch_sigma(double sx, double sy, double sz) {
    return 0.5 * (CMatrix::identity(2) + sx * pauli_x() + sy * pauli_y() + sz * pauli_z());
}

CMatrix random_unit_trace_hermitian(std::size_t d, Rng& rng) {
    CMatrix h = random_hermitian(d, rng);
    const cx shift = (cx(1.0, 0.0) - h.trace()) * (1.0 / static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) h(i, i) += shift;
    return h;
}

}  // namespace

TEST_CASE("build_channel validates sigma") {
    const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(1.0));
    CHECK_THROWS_AS(build_channel(sd, CMatrix::identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(build_channel(sd, CMatrix::identity(2)), validation_error);  // trace 2
    CMatrix nonherm(2, 2);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = cx(0.0, 0.3);
    CHECK_THROWS_AS(build_channel(sd, nonherm), validation_error);
}

TEST_CASE("identity-coupled unitary leaves the state untouched") {
    const BipartiteUnitary bu(CMatrix::identity(4), 2, 2);
    const SchmidtDecomposition sd = schmidt_decompose(bu);
    Rng rng(97);
    const ChannelRep ch = build_channel(sd, bloch_sigma(0.2, -0.4, 0.1));
    CHECK(ch.cp);
    CHECK(ch.tp);
    for (int rep = 0; rep < 5; ++rep) {
        CMatrix rho = random_unit_trace_hermitian(2, rng);
        CHECK((apply_channel(ch, rho) - rho).max_abs() < 1e-10);
    }
    // Choi is the rank-one maximally entangled projector.
    CVector psi(4, cx(0.0, 0.0));
    psi[0] = 1.0;
    psi[3] = 1.0;
    CHECK((ch.choi - outer(psi, psi)).max_abs() < 1e-9);
    CHECK(matrix_rank(ch.choi) == 1);
}

TEST_CASE("SWAP yields the constant map onto sigma") {
    const SchmidtDecomposition sd = schmidt_decompose(BipartiteUnitary(swap_matrix(2), 2, 2));
    Rng rng(101);
    const CMatrix sigma = bloch_sigma(0.3, 0.2, -0.5);
    const ChannelRep ch = build_channel(sd, sigma);
    CHECK(ch.cp);
    CHECK(ch.tp);
    for (int rep = 0; rep < 5; ++rep) {
        const CMatrix rho = random_unit_trace_hermitian(2, rng);
        CHECK((apply_channel(ch, rho) - sigma).max_abs() < 1e-9);
    }
}

TEST_CASE("completely depolarizing realization has Choi I/d") {
    const std::size_t d = 3;
    const SchmidtDecomposition sd = schmidt_decompose(BipartiteUnitary(swap_matrix(d), d, d));
    const CMatrix ch = choi_of(sd, CMatrix::identity(d) * cx(1.0 / d, 0.0));
    CHECK((ch - CMatrix::identity(d * d) * cx(1.0 / d, 0.0)).max_abs() < 1e-9);
}

TEST_CASE("apply matches the brute-force evolution, including unphysical sigma") {
    Rng rng(103);
    for (std::size_t da : {2, 3})
        for (std::size_t db : {2, 3}) {
            for (int rep = 0; rep < 25; ++rep) {
                const BipartiteUnitary bu(haar_unitary(da * db, rng), da, db);
                const SchmidtDecomposition sd = schmidt_decompose(bu);
                const CMatrix sigma = random_unit_trace_hermitian(db, rng);  // generally not PSD
                const CMatrix rho = random_unit_trace_hermitian(da, rng);
                const ChannelRep ch = build_channel(sd, sigma);
                CHECK((apply_channel(ch, rho) - brute_force_map(bu, rho, sigma)).max_abs() < 1e-9);
                CHECK(ch.tp);  // trace preservation needs only unit trace
                CHECK(ch.g.is_hermitian(1e-9));
                // Hermiticity preservation.
                CHECK(apply_channel(ch, rho).is_hermitian(1e-10));
            }
        }
}

TEST_CASE("XX rotation closed form and CP threshold") {
    Rng rng(107);
    const double pi = 3.14159265358979323846;
    for (double theta : {0.4, 1.1, pi / 2.0, 2.5}) {
        const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(theta));
        for (double sx : {0.0, 0.5, -0.8, 1.0, 1.2, -1.6}) {
            const double sy = rng.uniform() - 0.5, sz = rng.uniform() - 0.5;
            const ChannelRep ch = build_channel(sd, bloch_sigma(sx, sy, sz));

            const double t = std::sqrt(std::cos(theta) * std::cos(theta) +
                                       sx * sx * std::sin(theta) * std::sin(theta));
            const double alpha = std::atan2(sx * std::sin(theta), std::cos(theta));
            const CMatrix v = std::cos(alpha / 2.0) * CMatrix::identity(2) +
                              cx(0.0, std::sin(alpha / 2.0)) * pauli_x();
            const CMatrix xv = pauli_x() * v;
            const double pp = 0.5 * (1.0 + t), pm = 0.5 * (1.0 - t);

            for (std::size_t n = 0; n < 2; ++n)
                for (std::size_t n2 = 0; n2 < 2; ++n2) {
                    const CMatrix e = outer(basis_state(2, n), basis_state(2, n2));
                    const CMatrix closed =
                        pp * (v * e * v.dagger()) + pm * (xv * e * xv.dagger());
                    CHECK((apply_channel(ch, e) - closed).max_abs() < 1e-9);
                }

            CHECK(ch.cp == (std::abs(sx) <= 1.0));
            CHECK(ch.cp == (ch.min_choi_eig >= -1e-9));
            CHECK(ch.tp);
        }
    }
}

TEST_CASE("channel is independent of the sigma components outside the span") {
    const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(0.8));
    const ChannelRep a = build_channel(sd, bloch_sigma(0.4, 0.0, 0.0));
    const ChannelRep b = build_channel(sd, bloch_sigma(0.4, 5.0, -3.0));
    CHECK((a.g - b.g).max_abs() < 1e-10);
    CHECK((a.choi - b.choi).max_abs() < 1e-9);
}

TEST_CASE("Kraus extraction on CP channels") {
    const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(1.4));
    const ChannelRep ch = build_channel(sd, bloch_sigma(0.5, 0.1, -0.2));
    REQUIRE(ch.cp);
    const auto kraus = kraus_of(ch);
    CHECK(kraus.size() == 2);  // two orthogonal unitaries weighted by p+-

    CMatrix ksum(2, 2);
    for (const auto& k : kraus) ksum += k.dagger() * k;
    CHECK((ksum - CMatrix::identity(2)).max_abs() < 1e-8);

    // Kraus form reproduces the channel action.
    Rng rng(109);
    const CMatrix rho = random_unit_trace_hermitian(2, rng);
    CMatrix via_kraus(2, 2);
    for (const auto& k : kraus) via_kraus += k * rho * k.dagger();
    CHECK((via_kraus - apply_channel(ch, rho)).max_abs() < 1e-9);

    const ChannelRep bad = build_channel(sd, bloch_sigma(1.5, 0.0, 0.0));
    REQUIRE_FALSE(bad.cp);
    CHECK_THROWS_AS(kraus_of(bad), precondition_error);
    CHECK(bad.kraus.empty());
}

TEST_CASE("left-right positivity sampled over the span matches the CP verdict") {
    Rng rng(113);
    const SchmidtDecomposition sd = schmidt_decompose(xx_rotation(1.9));
    for (double sx : {0.7, 1.3}) {
        const ChannelRep ch = build_channel(sd, bloch_sigma(sx, 0.3, 0.4));
        double worst = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            CMatrix b(2, 2);
            for (int n = 0; n < sd.rank; ++n) b += rng.complex_gaussian() * sd.b_ops[n];
            const double val = (b * bloch_sigma(sx, 0.3, 0.4) * b.dagger()).trace().real() /
                               std::norm(b.frobenius_norm());
            worst = std::min(worst, val);
        }
        if (ch.cp)
            CHECK(worst >= -1e-8);
        else
            CHECK(worst < -1e-4);
    }
}
