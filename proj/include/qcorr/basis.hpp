#pragma once

#include <utility>

#include "qcorr/linalg.hpp"

namespace qcorr {

// Orthonormal basis of one subsystem, stored as the unitary whose columns are
// the basis vectors.
class LocalBasis {
public:
    explicit LocalBasis(CMatrix u);

    static LocalBasis computational(int d);
    static LocalBasis hadamard();
    // Columns (cos t/2, e^{i p} sin t/2) and (-e^{-i p} sin t/2, cos t/2).
    static LocalBasis qubit(double theta, double phi);
    // exp(iH(params)) * base, params holding the d^2 real coordinates of H.
    static LocalBasis from_generator(const RVector& params, const CMatrix& base);

    int dim() const { return static_cast<int>(u_.rows()); }
    const CMatrix& unitary() const { return u_; }
    CVector vec(int k) const { return u_.col(k); }
    CMatrix projector(int k) const { return u_.col(k) * u_.col(k).adjoint(); }

private:
    struct Trusted {};
    LocalBasis(CMatrix u, Trusted) : u_(std::move(u)) {}
    CMatrix u_;
};

// (theta, phi) of the first basis vector; inverse of LocalBasis::qubit up to
// phases of the columns.
std::pair<double, double> qubit_angles(const LocalBasis& b);

// Hermitian matrix from d^2 reals: diagonal first, then (re, im) of the strict
// upper triangle row by row.
CMatrix hermitian_from_params(const RVector& params, int d);
CMatrix expi_hermitian(const CMatrix& h);

double unitarity_defect(const CMatrix& u);

} // namespace qcorr
