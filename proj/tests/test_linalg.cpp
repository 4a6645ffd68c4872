#include <doctest.h>

#include "gen.hpp"
#include "qcorr/linalg.hpp"

using namespace qcorr;

TEST_CASE("partial trace follows the row index i = a*d_B + b") {
    // |01><01|: A in |0>, B in |1>
    CMatrix m = CMatrix::Zero(4, 4);
    m(1, 1) = 1;
    CMatrix ra = partial_trace(m, 2, 2, Side::B);
    CMatrix rb = partial_trace(m, 2, 2, Side::A);
    CHECK(ra(0, 0).real() == doctest::Approx(1));
    CHECK(ra(1, 1).real() == doctest::Approx(0));
    CHECK(rb(1, 1).real() == doctest::Approx(1));
    CHECK(rb(0, 0).real() == doctest::Approx(0));
}

TEST_CASE("partial trace of a product returns the other factor") {
    gen::for_cases(40, 11, [](gen::Case& c) {
        int da = c.integer(1, 4), db = c.integer(1, 4);
        CMatrix a = c.density(da).matrix(), b = c.density(db).matrix();
        CMatrix ab = kron(a, b);
        CHECK(gen::max_abs(partial_trace(ab, da, db, Side::B) - a) < 1e-12);
        CHECK(gen::max_abs(partial_trace(ab, da, db, Side::A) - b) < 1e-12);
    });
}

TEST_CASE("partial transpose is an involution and transposes the chosen factor") {
    gen::for_cases(30, 12, [](gen::Case& c) {
        int da = c.integer(1, 3), db = c.integer(1, 3);
        CMatrix a = c.hermitian(da), b = c.hermitian(db);
        CMatrix ab = kron(a, b);
        CHECK(gen::max_abs(partial_transpose(ab, da, db, Side::A) - kron(CMatrix(a.transpose()), b)) < 1e-12);
        CHECK(gen::max_abs(partial_transpose(ab, da, db, Side::B) - kron(a, CMatrix(b.transpose()))) < 1e-12);
        CMatrix m = c.bipartite(da, db).matrix();
        for (Side s : {Side::A, Side::B}) {
            CMatrix t = partial_transpose(m, da, db, s);
            CHECK(gen::max_abs(partial_transpose(t, da, db, s) - m) < 1e-14);
            CHECK(std::abs(t.trace() - m.trace()) < 1e-14);
        }
    });
}

TEST_CASE("bipartite shape is checked") {
    CMatrix m = CMatrix::Identity(6, 6);
    CHECK_THROWS_AS(partial_trace(m, 2, 2, Side::A), DimMismatch);
    CHECK_THROWS_AS(partial_transpose(m, 4, 2, Side::B), DimMismatch);
    CHECK_NOTHROW(partial_trace(m, 2, 3, Side::A));
}

TEST_CASE("Hermitian eigendecomposition reconstructs and sorts ascending") {
    gen::for_cases(40, 13, [](gen::Case& c) {
        int d = c.integer(1, 6);
        CMatrix h = c.hermitian(d);
        EigDecomposition e = herm_eig(h);
        for (int k = 1; k < d; ++k) CHECK(e.eigenvalues(k - 1) <= e.eigenvalues(k));
        CMatrix back = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() * e.eigenvectors.adjoint();
        CHECK(gen::max_abs(back - h) < 1e-12);
        CHECK((herm_eigenvalues(h) - e.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
    });
}

TEST_CASE("non-Hermitian input is rejected") {
    CMatrix m(2, 2);
    m << 1, 1, 0, 1;
    CHECK_THROWS_AS(herm_eig(m), NonHermitian);
    CHECK_THROWS_AS(sqrtm_psd(m), NonHermitian);
    CHECK_THROWS_AS(herm_eigenvalues(CMatrix::Zero(2, 3)), DimMismatch);
}

TEST_CASE("matrix square root") {
    gen::for_cases(30, 14, [](gen::Case& c) {
        int d = c.integer(1, 5);
        CMatrix rho = c.density(d).matrix();
        CMatrix s = sqrtm_psd(rho);
        CHECK(gen::max_abs(s * s - rho) < 1e-12);
        CHECK(hermiticity_defect(s) < 1e-14);
        CHECK(herm_eigenvalues(s).minCoeff() > -1e-14);
    });
    CMatrix neg = CMatrix::Identity(2, 2);
    neg(1, 1) = -1e-3;
    CHECK_THROWS_AS(sqrtm_psd(neg), NotPSD);
    // Rounding-level negatives are clamped.
    neg(1, 1) = -1e-12;
    CHECK(std::abs(sqrtm_psd(neg)(1, 1)) == 0.0);
}

TEST_CASE("spectral functions use 0 log 0 = 0 and 0^s = 0") {
    CMatrix p = CMatrix::Zero(2, 2);
    p(0, 0) = 1;
    CMatrix l = mat_func(p, SpectralFn::log2());
    CHECK(gen::max_abs(l) == 0.0);
    CMatrix q = mat_func(p, SpectralFn::pow(0.0));
    CHECK(q(0, 0).real() == doctest::Approx(1));
    CHECK(std::abs(q(1, 1)) == 0.0);
    CMatrix h = CMatrix::Identity(2, 2) * 0.25;
    CHECK(mat_func(h, SpectralFn::log2())(0, 0).real() == doctest::Approx(-2));
}

TEST_CASE("norms") {
    gen::for_cases(30, 15, [](gen::Case& c) {
        int d = c.integer(1, 5);
        CMatrix h = c.hermitian(d);
        CHECK(schatten_norm(h, 1) == doctest::Approx(hermitian_trace_norm(h)).epsilon(1e-12));
        CHECK(schatten_norm(h, 2) == doctest::Approx(std::sqrt((h.adjoint() * h).trace().real())));
        CMatrix u = c.unitary(d);
        CHECK(schatten_norm(CMatrix(u * h), 1) == doctest::Approx(schatten_norm(h, 1)).epsilon(1e-12));
        CHECK(schatten_norm(h, 1) >= schatten_norm(h, 2) - 1e-12);
    });
    CHECK_THROWS_AS(schatten_norm(CMatrix::Identity(2, 2), 3), DomainError);
    CMatrix x(2, 2);
    x << 0, 2, 0, 0;
    CHECK(schatten_norm(x, 1) == doctest::Approx(2));
}

TEST_CASE("kron matches the index convention") {
    CMatrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    CMatrix k = kron(a, b);
    // row i = a*d_B + b
    CHECK(k(0 * 2 + 0, 1 * 2 + 1) == a(0, 1) * b(0, 1));
    CHECK(k(1 * 2 + 1, 0 * 2 + 0) == a(1, 0) * b(1, 0));
}

TEST_CASE("templated on the scalar type") {
    Eigen::Matrix<std::complex<float>, Eigen::Dynamic, Eigen::Dynamic> m(2, 2);
    m << 2.0f, 0.0f, 0.0f, 1.0f;
    auto ev = herm_eigenvalues(m);
    CHECK(ev(0) == doctest::Approx(1.0f));
    CHECK(ev(1) == doctest::Approx(2.0f));
    auto s = sqrtm_psd(m);
    CHECK(std::abs(s(0, 0) - std::sqrt(2.0f)) < 1e-5f);
}
