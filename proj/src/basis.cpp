#include "qcorr/basis.hpp"

#include <cmath>

namespace qcorr {

double unitarity_defect(const CMatrix& u) {
    if (u.rows() != u.cols()) return INFINITY;
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

LocalBasis::LocalBasis(CMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() == 0) throw DimMismatch("LocalBasis: matrix must be square");
    if (unitarity_defect(u_) > 1e-10) throw NotUnitary("LocalBasis: columns are not orthonormal");
}

LocalBasis LocalBasis::computational(int d) {
    if (d < 1) throw DomainError("LocalBasis: dimension must be positive");
    return LocalBasis(CMatrix::Identity(d, d), Trusted{});
}

LocalBasis LocalBasis::hadamard() {
    CMatrix h(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return LocalBasis(h, Trusted{});
}

LocalBasis LocalBasis::qubit(double theta, double phi) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    cplx e = std::polar(1.0, phi);
    CMatrix u(2, 2);
    u << c, -std::conj(e) * s, e * s, c;
    return LocalBasis(u, Trusted{});
}

LocalBasis LocalBasis::from_generator(const RVector& params, const CMatrix& base) {
    int d = static_cast<int>(base.rows());
    CMatrix u = expi_hermitian(hermitian_from_params(params, d)) * base;
    return LocalBasis(std::move(u), Trusted{});
}

std::pair<double, double> qubit_angles(const LocalBasis& b) {
    if (b.dim() != 2) throw DimMismatch("qubit_angles: basis is not a qubit basis");
    cplx a = b.unitary()(0, 0), c = b.unitary()(1, 0);
    double theta = 2.0 * std::atan2(std::abs(c), std::abs(a));
    double phi = (std::abs(c) > 0 && std::abs(a) > 0) ? std::arg(c) - std::arg(a) : 0.0;
    return {theta, phi};
}

CMatrix hermitian_from_params(const RVector& p, int d) {
    if (p.size() != Eigen::Index(d) * d) throw DimMismatch("hermitian_from_params: need d^2 parameters");
    CMatrix h = CMatrix::Zero(d, d);
    int k = 0;
    for (int i = 0; i < d; ++i) h(i, i) = p(k++);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            h(i, j) = cplx(p(k), p(k + 1));
            h(j, i) = std::conj(h(i, j));
            k += 2;
        }
    return h;
}

CMatrix expi_hermitian(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector ph = es.eigenvalues().unaryExpr([](double x) { return std::polar(1.0, x); });
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace qcorr
