#include "qcorr/channels.hpp"

#include <cmath>
#include <numbers>

#include "qcorr/random.hpp"

namespace qcorr {

KrausChannel::KrausChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw InvalidChannel("KrausChannel: empty Kraus list");
    Eigen::Index din = ops_.front().cols(), dout = ops_.front().rows();
    CMatrix sum = CMatrix::Zero(din, din);
    for (const auto& k : ops_) {
        if (k.cols() != din || k.rows() != dout) throw InvalidChannel("KrausChannel: inconsistent shapes");
        sum += k.adjoint() * k;
    }
    if ((sum - CMatrix::Identity(din, din)).cwiseAbs().maxCoeff() > 1e-9)
        throw InvalidChannel("KrausChannel: sum K^dagger K != I");
}

CMatrix KrausChannel::apply(const CMatrix& rho) const {
    CMatrix out = CMatrix::Zero(d_out(), d_out());
    for (const auto& k : ops_) out += k * rho * k.adjoint();
    return out;
}

POVM::POVM(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw DomainError("POVM: no elements");
    Eigen::Index d = elements_.front().rows();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& e : elements_) {
        if (e.rows() != d || e.cols() != d) throw DimMismatch("POVM: element shapes differ");
        if (hermiticity_defect(e) > 1e-9 || herm_eigenvalues(e).minCoeff() < -1e-9)
            throw DomainError("POVM: element is not positive semidefinite");
        sum += e;
    }
    if ((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
        throw DomainError("POVM: elements do not sum to the identity");
}

POVM POVM::from_isometry_rows(const CMatrix& v) {
    std::vector<CMatrix> el;
    for (Eigen::Index k = 0; k < v.cols(); ++k) el.push_back(v.col(k) * v.col(k).adjoint());
    return POVM(std::move(el));
}

CMatrix embed_local(const CMatrix& u, Party party, int d_a, int d_b) {
    if (party == Party::A) {
        if (u.rows() != d_a || u.cols() != d_a) throw DimMismatch("embed_local: operator dim != d_A");
        return kron(u, CMatrix::Identity(d_b, d_b));
    }
    if (u.rows() != d_b || u.cols() != d_b) throw DimMismatch("embed_local: operator dim != d_B");
    return kron(CMatrix::Identity(d_a, d_a), u);
}

BipartiteState apply_local_unitary(const BipartiteState& s, const CMatrix& u, Party party) {
    if (u.rows() != u.cols()) throw DimMismatch("apply_local_unitary: operator is not square");
    if (unitarity_defect(u) > 1e-10) throw NotUnitary("apply_local_unitary: operator is not unitary");
    CMatrix w = embed_local(u, party, s.d_a(), s.d_b());
    return BipartiteState(DensityMatrix::trusted(w * s.matrix() * w.adjoint()), s.d_a(), s.d_b());
}

namespace {

// Zeroes the off-diagonal (a != a') blocks of rho expressed in basis_a on A.
CMatrix dephase_a(const CMatrix& rho, const CMatrix& ua, int d_a, int d_b) {
    CMatrix w = kron(ua, CMatrix::Identity(d_b, d_b));
    CMatrix r = w.adjoint() * rho * w;
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_a; ++j)
            if (i != j) r.block(i * d_b, j * d_b, d_b, d_b).setZero();
    return w * r * w.adjoint();
}

} // namespace

BipartiteState lpm_apply(const BipartiteState& s, const LocalBasis& basis_a,
                         const std::optional<LocalBasis>& basis_b) {
    int da = s.d_a(), db = s.d_b();
    if (basis_a.dim() != da) throw DimMismatch("lpm_apply: basis on A has wrong dimension");
    CMatrix r = dephase_a(s.matrix(), basis_a.unitary(), da, db);
    if (basis_b) {
        if (basis_b->dim() != db) throw DimMismatch("lpm_apply: basis on B has wrong dimension");
        BipartiteState swapped = swap_parties(BipartiteState(DensityMatrix::trusted(r), da, db));
        CMatrix rb = dephase_a(swapped.matrix(), basis_b->unitary(), db, da);
        return swap_parties(BipartiteState(DensityMatrix::trusted(rb), db, da));
    }
    return BipartiteState(DensityMatrix::trusted(std::move(r)), da, db);
}

BipartiteState premeasurement_state(const BipartiteState& s, const LocalBasis& basis_a,
                                    const std::optional<LocalBasis>& basis_b) {
    int da = s.d_a(), db = s.d_b();
    if (basis_a.dim() != da || (basis_b && basis_b->dim() != db))
        throw DimMismatch("premeasurement_state: basis dimension mismatch");
    int anc_b = basis_b ? db : 1;
    int anc = da * anc_b;
    // Columns indexed by the system, rows by system (x) ancilla.
    CMatrix v = CMatrix::Zero(Eigen::Index(da) * db * anc, Eigen::Index(da) * db);
    CMatrix ub = basis_b ? basis_b->unitary() : CMatrix::Identity(db, db);
    for (int i = 0; i < da; ++i) {
        CMatrix pa = basis_a.projector(i);
        for (int j = 0; j < anc_b; ++j) {
            CMatrix pb = basis_b ? basis_b->projector(j) : CMatrix::Identity(db, db);
            CMatrix proj = kron(pa, pb);
            CVector ket = CVector::Zero(anc);
            ket(i * anc_b + j) = 1.0;
            v += kron(proj, ket);
        }
    }
    CMatrix out = v * s.matrix() * v.adjoint();
    return BipartiteState(DensityMatrix::trusted(std::move(out)), da * db, anc);
}

BipartiteState apply_kraus(const BipartiteState& s, const KrausChannel& ch, Party party) {
    int da = s.d_a(), db = s.d_b();
    int d_in = party == Party::A ? da : db;
    if (ch.d_in() != d_in) throw InvalidChannel("apply_kraus: channel input dim does not match the party");
    int nda = party == Party::A ? ch.d_out() : da;
    int ndb = party == Party::B ? ch.d_out() : db;
    CMatrix out = CMatrix::Zero(nda * ndb, nda * ndb);
    for (const auto& k : ch.ops()) {
        CMatrix w = party == Party::A ? kron(k, CMatrix::Identity(db, db)) : kron(CMatrix::Identity(da, da), k);
        out += w * s.matrix() * w.adjoint();
    }
    return BipartiteState(DensityMatrix::trusted(std::move(out)), nda, ndb);
}

KrausChannel random_cptp(int d, int kraus_count, std::uint64_t seed) {
    if (d < 1 || kraus_count < 1) throw DomainError("random_cptp: need d >= 1 and kraus_count >= 1");
    Rng rng = make_rng(seed);
    CMatrix v = haar_isometry(Eigen::Index(d) * kraus_count, d, rng);
    std::vector<CMatrix> ops;
    for (int k = 0; k < kraus_count; ++k) ops.push_back(v.block(k * d, 0, d, d));
    return KrausChannel(std::move(ops));
}

KrausChannel dephasing(const LocalBasis& basis) {
    std::vector<CMatrix> ops;
    for (int k = 0; k < basis.dim(); ++k) ops.push_back(basis.projector(k));
    return KrausChannel(std::move(ops));
}

CMatrix phase_unitary(const LocalBasis& basis, std::span<const cplx> phases) {
    if (static_cast<int>(phases.size()) != basis.dim()) throw DimMismatch("phase_unitary: one phase per vector");
    CVector ph(phases.size());
    for (std::size_t k = 0; k < phases.size(); ++k) ph(k) = phases[k];
    return basis.unitary() * ph.asDiagonal() * basis.unitary().adjoint();
}

CMatrix harmonic_unitary(const LocalBasis& basis) {
    int d = basis.dim();
    std::vector<cplx> ph(d);
    for (int k = 0; k < d; ++k) ph[k] = std::polar(1.0, 2 * std::numbers::pi * k / d);
    if (d == 2) ph[1] = -1.0; // exact, keeps qubit harmonic unitaries Hermitian
    return phase_unitary(basis, ph);
}

void check_nondegenerate(std::span<const double> spectrum) {
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        for (std::size_t j = i + 1; j < spectrum.size(); ++j)
            if (std::abs(spectrum[i] - spectrum[j]) < 1e-9)
                throw DegenerateSpectrum("spectrum has two entries closer than 1e-9");
}

CMatrix local_observable(const LocalBasis& basis, std::span<const double> spectrum) {
    if (static_cast<int>(spectrum.size()) != basis.dim()) throw DimMismatch("local_observable: |spectrum| != d");
    check_nondegenerate(spectrum);
    RVector g = Eigen::Map<const RVector>(spectrum.data(), spectrum.size());
    return basis.unitary() * g.cast<cplx>().asDiagonal() * basis.unitary().adjoint();
}

} // namespace qcorr
