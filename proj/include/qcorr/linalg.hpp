#pragma once

#include <cmath>
#include <limits>
#include <complex>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qcorr/errors.hpp"

namespace qcorr {

template <typename Real>
using CMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using CMatrix = CMatrixT<double>;
using CVector = CVectorT<double>;
using RVector = RVectorT<double>;
using RMatrix = Eigen::MatrixXd;

inline constexpr double tol_herm = 1e-9;
inline constexpr double tol_psd = 1e-9;

// Which tensor factor an operation acts on (the traced / transposed one).
enum class Side { A, B };

template <typename Real>
struct EigDecompositionT {
    RVectorT<Real> eigenvalues;  // ascending
    CMatrixT<Real> eigenvectors; // columns
};
using EigDecomposition = EigDecompositionT<double>;

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimMismatch(std::string(what) + ": matrix must be square and non-empty");
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const char* what) {
    require_square(m, what);
    if (hermiticity_defect(m) > tol_herm)
        throw NonHermitian(std::string(what) + ": input is not Hermitian within tol_herm");
}

} // namespace detail

// Hermitian eigendecomposition; only the Hermitian part of m is used once the
// defect check passes.
template <typename Derived>
EigDecompositionT<typename Derived::RealScalar> herm_eig(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Derived::RealScalar;
    detail::require_hermitian(m, "herm_eig");
    CMatrixT<Real> h = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrixT<Real>> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

template <typename Derived>
RVectorT<typename Derived::RealScalar> herm_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Derived::RealScalar;
    detail::require_hermitian(m, "herm_eigenvalues");
    if (m.rows() == 2) {
        // closed form; the 2x2 case dominates the optimizer inner loops
        Real a = std::real(m(0, 0)), d = std::real(m(1, 1));
        Real b = std::abs(Real(0.5) * (m(0, 1) + std::conj(m(1, 0))));
        Real mid = Real(0.5) * (a + d);
        Real rad = std::hypot(Real(0.5) * (a - d), b);
        RVectorT<Real> ev(2);
        ev << mid - rad, mid + rad;
        return ev;
    }
    CMatrixT<Real> h = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrixT<Real>> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

template <typename Real>
struct SpectralFnT {
    enum class Kind { Sqrt, Log2, Pow };
    Kind kind;
    Real alpha = 1;

    static SpectralFnT sqrt() { return {Kind::Sqrt, Real(0.5)}; }
    static SpectralFnT log2() { return {Kind::Log2, 0}; }
    static SpectralFnT pow(Real a) { return {Kind::Pow, a}; }

    // Zero eigenvalues map to zero for log2 (0 log 0 = 0) and for any power,
    // so the result is supported on the support of the input.
    Real operator()(Real x) const {
        if (x <= 0) return 0;
        switch (kind) {
        case Kind::Sqrt: return std::sqrt(x);
        case Kind::Log2: return std::log2(x);
        case Kind::Pow: return std::pow(x, alpha);
        }
        return 0;
    }
};
using SpectralFn = SpectralFnT<double>;

template <typename Real>
CMatrixT<Real> mat_func(const EigDecompositionT<Real>& e, SpectralFnT<Real> f) {
    if (e.eigenvalues.size() > 0 && e.eigenvalues.minCoeff() < -Real(tol_psd))
        throw NotPSD("mat_func: minimum eigenvalue below -tol_psd");
    // Eigenvalues within rounding of zero count as zero: otherwise sqrt turns
    // 1e-17 noise into 3e-9 errors on rank-deficient inputs.
    Real scale = e.eigenvalues.size() > 0 ? e.eigenvalues.cwiseAbs().maxCoeff() : Real(0);
    Real cut = Real(64) * std::numeric_limits<Real>::epsilon() * scale;
    RVectorT<Real> fv = e.eigenvalues.unaryExpr([&](Real x) { return x <= cut ? Real(0) : f(x); });
    return e.eigenvectors * fv.asDiagonal() * e.eigenvectors.adjoint();
}

template <typename Derived>
CMatrixT<typename Derived::RealScalar> mat_func(const Eigen::MatrixBase<Derived>& m,
                                                SpectralFnT<typename Derived::RealScalar> f) {
    return mat_func(herm_eig(m), f);
}

template <typename Derived>
CMatrixT<typename Derived::RealScalar> sqrtm_psd(const Eigen::MatrixBase<Derived>& m) {
    return mat_func(m, SpectralFnT<typename Derived::RealScalar>::sqrt());
}

namespace detail {
template <typename Derived>
void require_bipartite(const Eigen::MatrixBase<Derived>& m, int d_a, int d_b, const char* what) {
    if (d_a < 1 || d_b < 1 || m.rows() != Eigen::Index(d_a) * d_b || m.cols() != m.rows())
        throw DimMismatch(std::string(what) + ": matrix dimension is not d_A*d_B");
}
} // namespace detail

// Index convention: row i = a*d_B + b.
template <typename Derived>
CMatrixT<typename Derived::RealScalar> partial_trace(const Eigen::MatrixBase<Derived>& m, int d_a,
                                                     int d_b, Side traced) {
    detail::require_bipartite(m, d_a, d_b, "partial_trace");
    using Real = typename Derived::RealScalar;
    if (traced == Side::B) {
        CMatrixT<Real> out = CMatrixT<Real>::Zero(d_a, d_a);
        for (int i = 0; i < d_a; ++i)
            for (int j = 0; j < d_a; ++j)
                out(i, j) = m.block(i * d_b, j * d_b, d_b, d_b).trace();
        return out;
    }
    CMatrixT<Real> out = CMatrixT<Real>::Zero(d_b, d_b);
    for (int a = 0; a < d_a; ++a) out += m.block(a * d_b, a * d_b, d_b, d_b);
    return out;
}

template <typename Derived>
CMatrixT<typename Derived::RealScalar> partial_transpose(const Eigen::MatrixBase<Derived>& m,
                                                         int d_a, int d_b, Side side) {
    detail::require_bipartite(m, d_a, d_b, "partial_transpose");
    CMatrixT<typename Derived::RealScalar> out(m.rows(), m.cols());
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_a; ++j) {
            if (side == Side::A)
                out.block(i * d_b, j * d_b, d_b, d_b) = m.block(j * d_b, i * d_b, d_b, d_b);
            else
                out.block(i * d_b, j * d_b, d_b, d_b) = m.block(i * d_b, j * d_b, d_b, d_b).transpose();
        }
    return out;
}

template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    using Scalar = typename DA::Scalar;
    return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(Eigen::kroneckerProduct(a, b));
}

// Trace norm of a Hermitian matrix from its spectrum (cheaper than an SVD).
template <typename Derived>
typename Derived::RealScalar hermitian_trace_norm(const Eigen::MatrixBase<Derived>& m) {
    return herm_eigenvalues(m).cwiseAbs().sum();
}

template <typename Derived>
typename Derived::RealScalar schatten_norm(const Eigen::MatrixBase<Derived>& m, int p) {
    using Real = typename Derived::RealScalar;
    if (p == 2) return m.norm();
    if (p != 1) throw DomainError("schatten_norm: only p = 1 and p = 2 are supported");
    if (m.size() == 0) return Real(0);
    Eigen::JacobiSVD<CMatrixT<Real>> svd(m.eval());
    return svd.singularValues().sum();
}

} // namespace qcorr
