#include <doctest.h>

#include <numbers>

#include "gen.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/metrics.hpp"

using namespace qcorr;

namespace {

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Partial trace over the last factor of dimension d_c.
CMatrix trace_out_last(const CMatrix& m, int d_c) {
    int d = static_cast<int>(m.rows()) / d_c;
    return partial_trace(m, d, d_c, Side::B);
}

} // namespace

TEST_CASE("local unitaries") {
    BipartiteState phi = max_entangled(2);
    BipartiteState xx = apply_local_unitary(apply_local_unitary(phi, pauli_x(), Party::A), pauli_x(), Party::B);
    CHECK(gen::max_abs(xx.matrix() - phi.matrix()) < 1e-15);

    BipartiteState s = family_xy({0.3, 0.2});
    BipartiteState z = apply_local_unitary(s, pauli_z(), Party::A);
    CHECK((herm_eigenvalues(z.matrix()) - herm_eigenvalues(s.matrix())).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(gen::max_abs(apply_local_unitary(s, CMatrix::Identity(2, 2), Party::B).matrix() - s.matrix()) == 0.0);

    gen::for_cases(30, 31, [](gen::Case& c) {
        int da = c.integer(1, 3), db = c.integer(1, 3);
        BipartiteState s = c.bipartite(da, db);
        BipartiteState ua = apply_local_unitary(s, c.unitary(da), Party::A);
        CHECK(gen::max_abs(ua.marginal_b() - s.marginal_b()) < 1e-12);
        BipartiteState ub = apply_local_unitary(s, c.unitary(db), Party::B);
        CHECK(gen::max_abs(ub.marginal_a() - s.marginal_a()) < 1e-12);
        CHECK((herm_eigenvalues(ub.matrix()) - herm_eigenvalues(s.matrix())).cwiseAbs().maxCoeff() < 1e-12);
    });

    CMatrix bad = CMatrix::Identity(2, 2) * 1.01;
    CHECK_THROWS_AS(apply_local_unitary(s, bad, Party::A), NotUnitary);
    CHECK_THROWS_AS(apply_local_unitary(s, CMatrix::Identity(3, 3), Party::A), DimMismatch);
}

TEST_CASE("local projective measurements") {
    BipartiteState fp = family_xy({0.4, 0});
    CHECK(gen::max_abs(lpm_apply(fp, LocalBasis::computational(2)).matrix() - fp.matrix()) < 1e-15);

    CMatrix dephased = CMatrix::Zero(4, 4);
    dephased(0, 0) = dephased(3, 3) = 0.5;
    CHECK(gen::max_abs(lpm_apply(max_entangled(2), LocalBasis::computational(2)).matrix() - dephased) < 1e-15);

    BipartiteState mixed(DensityMatrix(CMatrix::Identity(4, 4) / 4.0), 2, 2);
    CHECK(gen::max_abs(
              lpm_apply(mixed, LocalBasis::computational(2), LocalBasis::computational(2)).matrix() -
              mixed.matrix()) < 1e-15);

    gen::for_cases(50, 32, [](gen::Case& c) {
        int da = c.integer(2, 3), db = c.integer(2, 3);
        BipartiteState s = c.bipartite(da, db);
        LocalBasis ba = c.basis(da);
        BipartiteState once = lpm_apply(s, ba);
        CHECK(gen::max_abs(lpm_apply(once, ba).matrix() - once.matrix()) < 1e-12);
        CHECK(std::abs(once.matrix().trace() - 1.0) < 1e-12);
        CHECK(von_neumann_entropy(once.matrix()) >= von_neumann_entropy(s.matrix()) - 1e-9);

        // Block diagonal in the measured basis.
        CMatrix rot = embed_local(ba.unitary().adjoint(), Party::A, da, db) * once.matrix() *
                      embed_local(ba.unitary(), Party::A, da, db);
        for (int a = 0; a < da; ++a)
            for (int a2 = 0; a2 < da; ++a2)
                if (a != a2) CHECK(gen::max_abs(rot.block(a * db, a2 * db, db, db)) < 1e-12);

        LocalBasis bb = c.basis(db);
        BipartiteState two = lpm_apply(s, ba, bb);
        CHECK(gen::max_abs(lpm_apply(two, ba, bb).matrix() - two.matrix()) < 1e-12);
        CHECK(von_neumann_entropy(two.matrix()) >= von_neumann_entropy(once.matrix()) - 1e-9);
    });

    CHECK_THROWS_AS(lpm_apply(fp, LocalBasis::computational(3)), DimMismatch);
}

TEST_CASE("pre-measurement state") {
    // Bell state measured on A: GHZ across AB : A'.
    BipartiteState ghz = premeasurement_state(max_entangled(2), LocalBasis::computational(2));
    CHECK(ghz.d_a() == 4);
    CHECK(ghz.d_b() == 2);
    CHECK(ghz.rho().purity() == doctest::Approx(1).epsilon(1e-12));
    CHECK(negativity(ghz) == doctest::Approx(1).epsilon(1e-12));
    CHECK(std::abs(ghz.matrix()(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(ghz.matrix()(7, 7).real() - 0.5) < 1e-15);
    CHECK(std::abs(ghz.matrix()(0, 7).real() - 0.5) < 1e-15);

    // A classical-quantum state in its own basis stays separable (PPT at d = 2).
    gen::for_cases(10, 33, [](gen::Case& c) {
        LocalBasis b = c.qubit_basis();
        std::array<double, 2> p{0.3, 0.7};
        std::vector<DensityMatrix> cond{c.density(2), c.density(2)};
        BipartiteState s = classical_quantum(p, b, cond);
        BipartiteState pm = premeasurement_state(s, b);
        CHECK(negativity(pm) < 1e-10);
    });

    gen::for_cases(200, 34, [](gen::Case& c) {
        int da = c.integer(2, 3), db = c.integer(2, 3);
        BipartiteState s = c.bipartite(da, db);
        LocalBasis ba = c.basis(da);
        BipartiteState pm = premeasurement_state(s, ba);
        CHECK(gen::max_abs(trace_out_last(pm.matrix(), da) - lpm_apply(s, ba).matrix()) < 1e-12);
        if (c.index % 4 == 0) {
            LocalBasis bb = c.basis(db);
            BipartiteState pm2 = premeasurement_state(s, ba, bb);
            CHECK(pm2.d_b() == da * db);
            CHECK(gen::max_abs(trace_out_last(pm2.matrix(), da * db) - lpm_apply(s, ba, bb).matrix()) < 1e-12);
        }
    });

    BipartiteState pure = random_pure_bipartite(2, 3, 4);
    CHECK(premeasurement_state(pure, LocalBasis::hadamard()).rho().purity() == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("Kraus channels") {
    BipartiteState phi = max_entangled(2);
    KrausChannel id({CMatrix::Identity(2, 2)});
    CHECK(gen::max_abs(apply_kraus(phi, id, Party::B).matrix() - phi.matrix()) == 0.0);

    gen::for_cases(10, 35, [](gen::Case& c) {
        BipartiteState s = c.mixed_qubits();
        LocalBasis b = c.qubit_basis();
        CHECK(gen::max_abs(apply_kraus(s, dephasing(b), Party::B).matrix() -
                           swap_parties(lpm_apply(swap_parties(s), b)).matrix()) < 1e-13);
    });

    KrausChannel r9 = random_cptp(2, 3, 9);
    CHECK(std::abs(apply_kraus(phi, r9, Party::B).matrix().trace() - 1.0) < 1e-11);

    gen::for_cases(1000, 36, [](gen::Case& c) {
        int da = c.integer(1, 3), db = c.integer(2, 3);
        BipartiteState s = c.bipartite(da, db);
        KrausChannel ch = random_cptp(db, c.integer(1, 4), c.seed());
        CMatrix out = apply_kraus(s, ch, Party::B).matrix();
        CHECK(std::abs(out.trace() - 1.0) < 1e-12);
        CHECK(herm_eigenvalues(out).minCoeff() > -1e-9);
    });

    CHECK_THROWS_AS(KrausChannel({CMatrix::Identity(2, 2) * 0.5}), InvalidChannel);
    CHECK_THROWS_AS(apply_kraus(phi, random_cptp(3, 2, 1), Party::B), InvalidChannel);
}

TEST_CASE("random channels") {
    gen::for_cases(20, 37, [](gen::Case& c) {
        int d = c.integer(1, 4), k = c.integer(1, 5);
        std::uint64_t seed = c.seed();
        KrausChannel ch = random_cptp(d, k, seed);
        CHECK(ch.ops().size() == static_cast<std::size_t>(k));
        CMatrix sum = CMatrix::Zero(d, d);
        for (const CMatrix& op : ch.ops()) sum += op.adjoint() * op;
        CHECK(gen::max_abs(sum - CMatrix::Identity(d, d)) < 1e-10);
        KrausChannel again = random_cptp(d, k, seed);
        for (int i = 0; i < k; ++i) CHECK(gen::max_abs(again.ops()[i] - ch.ops()[i]) == 0.0);
    });
    CHECK(unitarity_defect(random_cptp(3, 1, 5).ops()[0]) < 1e-10);
    CHECK_THROWS_AS(random_cptp(2, 0, 1), DomainError);
}

TEST_CASE("harmonic unitaries and observables") {
    CHECK(gen::max_abs(harmonic_unitary(LocalBasis::computational(2)) - pauli_z()) < 1e-15);
    CHECK(gen::max_abs(harmonic_unitary(LocalBasis::hadamard()) - pauli_x()) < 1e-15);
    CMatrix h3 = harmonic_unitary(LocalBasis::computational(3));
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(h3(k, k) - std::polar(1.0, 2 * std::numbers::pi * k / 3)) < 1e-15);

    gen::for_cases(10, 38, [](gen::Case& c) {
        int d = c.integer(2, 5);
        LocalBasis b = c.basis(d);
        CMatrix u = harmonic_unitary(b);
        CHECK(unitarity_defect(u) < 1e-12);
        CMatrix ud = CMatrix::Identity(d, d);
        for (int k = 0; k < d; ++k) ud = ud * u;
        CHECK(gen::max_abs(ud - CMatrix::Identity(d, d)) < 1e-12);
    });

    // Bloch direction n through the qubit chart gives n . sigma for spectrum {+1, -1}.
    double t = 0.7, p = 1.9;
    std::array<double, 2> pm{1, -1};
    CMatrix obs = local_observable(LocalBasis::qubit(t, p), pm);
    CMatrix ndots(2, 2);
    ndots << std::cos(t), std::polar(std::sin(t), -p), std::polar(std::sin(t), p), -std::cos(t);
    CHECK(gen::max_abs(obs - ndots) < 1e-14);

    std::array<double, 2> g01{0, 1};
    CMatrix diag01 = CMatrix::Zero(2, 2);
    diag01(1, 1) = 1;
    CHECK(gen::max_abs(local_observable(LocalBasis::computational(2), g01) - diag01) < 1e-15);

    std::array<double, 3> g3{0, 1, 2};
    gen::Case c{0, make_rng(39, 0)};
    LocalBasis b3 = c.basis(3);
    CMatrix o3 = local_observable(b3, g3);
    for (int k = 0; k < 3; ++k) CHECK(gen::max_abs(o3 * b3.vec(k) - g3[k] * b3.vec(k)) < 1e-13);

    std::array<double, 2> degenerate{1, 1 + 1e-10};
    CHECK_THROWS_AS(local_observable(LocalBasis::computational(2), degenerate), DegenerateSpectrum);
}

TEST_CASE("qubit chart") {
    LocalBasis b = LocalBasis::qubit(0, 0);
    CHECK(gen::max_abs(b.unitary() - CMatrix::Identity(2, 2)) < 1e-15);
    gen::for_cases(30, 40, [](gen::Case& c) {
        double t = c.uniform(0.01, 3.13), p = c.uniform(0, 6.28);
        LocalBasis q = LocalBasis::qubit(t, p);
        CHECK(unitarity_defect(q.unitary()) < 1e-14);
        auto [t2, p2] = qubit_angles(q);
        CHECK(t2 == doctest::Approx(t).epsilon(1e-12));
        CHECK(std::abs(std::polar(1.0, p2) - std::polar(1.0, p)) < 1e-12);
    });
    CHECK_THROWS_AS(LocalBasis(CMatrix::Identity(2, 2) * 2.0), NotUnitary);
}
