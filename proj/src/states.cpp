#include "qcorr/states.hpp"

#include <cmath>
#include <numeric>

#include "qcorr/random.hpp"

namespace qcorr {

std::optional<std::string> density_violation(const CMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return "square";
    if (!m.allFinite()) return "finite";
    if (hermiticity_defect(m) > tol) return "hermitian";
    if (std::abs(m.trace() - cplx(1.0)) > tol) return "trace";
    if (herm_eigenvalues(m).minCoeff() < -tol) return "psd";
    return std::nullopt;
}

DensityMatrix::DensityMatrix(const CMatrix& m) {
    if (auto v = density_violation(m)) {
        std::string what = "density matrix invariant violated: " + *v;
        throw InvalidState(*v, what);
    }
    mat_ = (m + m.adjoint()) / 2.0;
}

DensityMatrix DensityMatrix::trusted(CMatrix m) {
    DensityMatrix r;
    r.mat_ = std::move(m);
    return r;
}

BipartiteState::BipartiteState(DensityMatrix rho, int d_a, int d_b)
    : rho_(std::move(rho)), d_a_(d_a), d_b_(d_b) {
    if (d_a < 1 || d_b < 1 || rho_.dim() != d_a * d_b)
        throw DimMismatch("BipartiteState: dim(rho) != d_A*d_B");
}

BipartiteState family_xy(FamilyPointXY p) {
    double x = p.x, y = p.y;
    if (!(x >= 0) || !(y >= 0) || x + y > 1 + 1e-12)
        throw DomainError("family_xy: need x >= 0, y >= 0, x + y <= 1");
    RMatrix m(4, 4);
    m << 1 - x - y, 0, 0, 0,
         0, 4 * x * y + y, 4 * x * y, y,
         0, 4 * x * y, 4 * x * y + x, x,
         0, y, x, 1;
    m /= 2 + 8 * x * y;
    return BipartiteState(DensityMatrix::trusted(m.cast<cplx>()), 2, 2);
}

BipartiteState bell_diagonal(const std::array<double, 4>& p) {
    double sum = 0;
    for (double v : p) {
        if (!(v >= -1e-12)) throw DomainError("bell_diagonal: negative weight");
        sum += v;
    }
    if (std::abs(sum - 1) > 1e-9) throw DomainError("bell_diagonal: weights must sum to 1");
    // Phi+- span {00, 11}; Psi+- span {01, 10}.
    RMatrix m = RMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5 * (p[0] + p[1]);
    m(0, 3) = m(3, 0) = 0.5 * (p[0] - p[1]);
    m(1, 1) = m(2, 2) = 0.5 * (p[2] + p[3]);
    m(1, 2) = m(2, 1) = 0.5 * (p[2] - p[3]);
    return BipartiteState(DensityMatrix::trusted(m.cast<cplx>()), 2, 2);
}

namespace {

void check_probs(std::span<const double> probs, const char* what) {
    double sum = 0;
    for (double v : probs) {
        if (!(v >= 0)) throw DomainError(std::string(what) + ": negative probability");
        sum += v;
    }
    if (std::abs(sum - 1) > 1e-9) throw DomainError(std::string(what) + ": probabilities must sum to 1");
}

} // namespace

BipartiteState classical_quantum(std::span<const double> probs, const LocalBasis& basis,
                                 std::span<const DensityMatrix> cond_states) {
    int d_a = basis.dim();
    if (static_cast<int>(probs.size()) != d_a || cond_states.size() != probs.size())
        throw DomainError("classical_quantum: need one probability and one state per basis vector");
    check_probs(probs, "classical_quantum");
    int d_b = cond_states.front().dim();
    CMatrix rho = CMatrix::Zero(d_a * d_b, d_a * d_b);
    for (int a = 0; a < d_a; ++a) {
        if (cond_states[a].dim() != d_b) throw DomainError("classical_quantum: conditional dims differ");
        if (probs[a] == 0) continue;
        rho += probs[a] * kron(basis.projector(a), cond_states[a].matrix());
    }
    return BipartiteState(DensityMatrix::trusted(std::move(rho)), d_a, d_b);
}

BipartiteState classical_classical(const RMatrix& joint, const LocalBasis& basis_a,
                                   const LocalBasis& basis_b) {
    if (joint.rows() != basis_a.dim() || joint.cols() != basis_b.dim())
        throw DomainError("classical_classical: joint table shape does not match the bases");
    if ((joint.array() < 0).any() || std::abs(joint.sum() - 1) > 1e-9)
        throw DomainError("classical_classical: invalid joint distribution");
    int d_a = basis_a.dim(), d_b = basis_b.dim();
    CMatrix rho = CMatrix::Zero(d_a * d_b, d_a * d_b);
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_b; ++j)
            if (joint(i, j) > 0) rho += joint(i, j) * kron(basis_a.projector(i), basis_b.projector(j));
    return BipartiteState(DensityMatrix::trusted(std::move(rho)), d_a, d_b);
}

BipartiteState product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    return BipartiteState(DensityMatrix::trusted(kron(rho_a.matrix(), rho_b.matrix())), rho_a.dim(),
                          rho_b.dim());
}

BipartiteState pure_state(const CVector& psi, int d_a, int d_b) {
    if (psi.size() != Eigen::Index(d_a) * d_b) throw DimMismatch("pure_state: vector length != d_A*d_B");
    double n = psi.norm();
    if (!(n > 0)) throw DomainError("pure_state: zero vector");
    CVector v = psi / n;
    return BipartiteState(DensityMatrix::trusted(v * v.adjoint()), d_a, d_b);
}

BipartiteState max_entangled(int d) {
    if (d < 2) throw DomainError("max_entangled: d must be at least 2");
    CVector psi = CVector::Zero(d * d);
    for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0;
    return pure_state(psi, d, d);
}

BipartiteState werner(int d, double p) {
    if (d < 2 || !(p >= 0 && p <= 1)) throw DomainError("werner: need d >= 2 and p in [0, 1]");
    int n = d * d;
    CMatrix swap = CMatrix::Zero(n, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) swap(j * d + i, i * d + j) = 1.0;
    CMatrix id = CMatrix::Identity(n, n);
    CMatrix anti = (id - swap) / double(d * (d - 1));
    CMatrix sym = (id + swap) / double(d * (d + 1));
    return BipartiteState(DensityMatrix::trusted(p * anti + (1 - p) * sym), d, d);
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
    if (d < 1 || rank < 1 || rank > d) throw DomainError("random_density: need 1 <= rank <= d");
    Rng rng = make_rng(seed);
    CMatrix g = ginibre(d, rank, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::trusted((rho + rho.adjoint()) / 2.0);
}

BipartiteState random_bipartite(int d_a, int d_b, int rank, std::uint64_t seed) {
    return BipartiteState(random_density(d_a * d_b, rank, seed), d_a, d_b);
}

BipartiteState random_pure_bipartite(int d_a, int d_b, std::uint64_t seed) {
    if (d_a < 1 || d_b < 1) throw DomainError("random_pure_bipartite: dims must be positive");
    Rng rng = make_rng(seed);
    return pure_state(ginibre(d_a * d_b, 1, rng).col(0), d_a, d_b);
}

BipartiteState swap_parties(const BipartiteState& s) {
    int da = s.d_a(), db = s.d_b();
    CMatrix out(s.dim(), s.dim());
    const CMatrix& m = s.matrix();
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
            for (int a2 = 0; a2 < da; ++a2)
                for (int b2 = 0; b2 < db; ++b2) out(b * da + a, b2 * da + a2) = m(a * db + b, a2 * db + b2);
    return BipartiteState(DensityMatrix::trusted(std::move(out)), db, da);
}

BipartiteState append_to_b(const BipartiteState& s, const DensityMatrix& rho_c) {
    return BipartiteState(DensityMatrix::trusted(kron(s.matrix(), rho_c.matrix())), s.d_a(),
                          s.d_b() * rho_c.dim());
}

} // namespace qcorr
