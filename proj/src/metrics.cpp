#include "qcorr/metrics.hpp"

#include <algorithm>

#include "qcorr/optimizer.hpp"

namespace qcorr {

const char* to_string(DistanceId id) {
    switch (id) {
    case DistanceId::RE: return "re";
    case DistanceId::S1: return "s1";
    case DistanceId::S2: return "s2";
    case DistanceId::Bures: return "bures";
    case DistanceId::Hellinger: return "hellinger";
    case DistanceId::L1: return "l1";
    case DistanceId::ChernoffComplement: return "chernoff";
    }
    return "?";
}

double shannon_entropy(std::span<const double> p) {
    double h = 0;
    for (double v : p)
        if (v > 0) h -= v * std::log2(v);
    return h;
}

double shannon_entropy(const RVector& p) { return shannon_entropy(std::span<const double>(p.data(), p.size())); }

double von_neumann_entropy(const CMatrix& rho) { return shannon_entropy(herm_eigenvalues(rho)); }

double mutual_information(const BipartiteState& s) {
    return von_neumann_entropy(s.marginal_a()) + von_neumann_entropy(s.marginal_b()) -
           von_neumann_entropy(s.matrix());
}

ExtendedReal relative_entropy(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.rows() != sigma.rows()) throw DimMismatch("relative_entropy: dims differ");
    EigDecomposition es = herm_eig(sigma);
    double cross = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
        double w = (es.eigenvectors.col(k).adjoint() * rho * es.eigenvectors.col(k)).value().real();
        double mu = es.eigenvalues(k);
        if (mu < 1e-12) {
            if (w > 1e-9) return ExtendedReal::infinity();
            continue;
        }
        cross += w * std::log2(mu);
    }
    return {std::max(0.0, -von_neumann_entropy(rho) - cross)};
}

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.rows() != sigma.rows()) throw DimMismatch("fidelity: dims differ");
    // |sqrt(rho) sqrt(sigma)|_1 via singular values: no square roots of
    // eigenvalues that are zero up to rounding.
    double t = schatten_norm(CMatrix(sqrtm_psd(rho) * sqrtm_psd(sigma)), 1);
    return std::clamp(t * t, 0.0, 1.0);
}

namespace {

// p^s with the support convention: a zero eigenvalue contributes 0 for every s.
double spow(double p, double s) { return p > 1e-15 ? std::pow(p, s) : 0.0; }

} // namespace

ChernoffResult chernoff(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.rows() != sigma.rows()) throw DimMismatch("chernoff: dims differ");
    EigDecomposition er = herm_eig(rho), es = herm_eig(sigma);
    RMatrix overlap = (er.eigenvectors.adjoint() * es.eigenvectors).cwiseAbs2();
    RVector p = er.eigenvalues.cwiseMax(0.0), q = es.eigenvalues.cwiseMax(0.0);
    auto f = [&](double s) {
        double t = 0;
        for (Eigen::Index m = 0; m < p.size(); ++m) {
            double pm = spow(p(m), s);
            if (pm == 0) continue;
            for (Eigen::Index n = 0; n < q.size(); ++n) t += pm * spow(q(n), 1 - s) * overlap(m, n);
        }
        return t;
    };
    ScalarMin r = min_scalar(f, 0.0, 1.0, true);
    return {std::clamp(r.value, 0.0, 1.0), r.arg};
}

ExtendedReal distance(DistanceId id, const CMatrix& rho, const CMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw DimMismatch("distance: dims differ");
    switch (id) {
    case DistanceId::RE: return relative_entropy(rho, sigma);
    case DistanceId::S1: return {hermitian_trace_norm(rho - sigma)};
    case DistanceId::S2: return {(rho - sigma).squaredNorm()};
    case DistanceId::Bures: return {2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)))};
    case DistanceId::Hellinger: {
        double a = (sqrtm_psd(rho) * sqrtm_psd(sigma)).trace().real();
        return {std::max(0.0, 2.0 * (1.0 - a))};
    }
    case DistanceId::ChernoffComplement: return {1.0 - chernoff_C(rho, sigma)};
    case DistanceId::L1: throw DomainError("distance: L1 needs an explicit basis (use distance_l1)");
    }
    throw DomainError("distance: unknown id");
}

double distance_l1(const CMatrix& rho, const CMatrix& sigma, const CMatrix& w) {
    if (rho.rows() != sigma.rows() || w.rows() != rho.rows()) throw DimMismatch("distance_l1: dims differ");
    return (w.adjoint() * (rho - sigma) * w).cwiseAbs().sum();
}

double skew_information(const CMatrix& rho, const CMatrix& k) {
    detail::require_hermitian(k, "skew_information");
    CMatrix sq = sqrtm_psd(rho);
    CMatrix c = sq * k - k * sq;
    // [sqrt(rho), K] is anti-Hermitian, so -Tr(C^2)/2 = |C|_F^2/2.
    return 0.5 * c.squaredNorm();
}

double quantum_fisher_information(const CMatrix& rho, const CMatrix& k) {
    detail::require_hermitian(k, "quantum_fisher_information");
    EigDecomposition e = herm_eig(rho);
    CMatrix kt = e.eigenvectors.adjoint() * k * e.eigenvectors;
    double f = 0;
    Eigen::Index n = e.eigenvalues.size();
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) {
            double qa = std::max(e.eigenvalues(a), 0.0), qb = std::max(e.eigenvalues(b), 0.0);
            double dq = qa - qb, sq = qa + qb;
            if (std::abs(dq) <= 1e-10 || sq <= 1e-12) continue;
            f += dq * dq / sq * std::norm(kt(a, b));
        }
    return 4.0 * f;
}

} // namespace qcorr
