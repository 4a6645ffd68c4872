#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcorr/channels.hpp"
#include "qcorr/entanglement.hpp"

namespace qcorr {

const char* to_string(MeasureSide s) { return s == MeasureSide::A ? "A" : "AB"; }

std::vector<double> default_spectrum(int d) {
    if (d == 2) return {1.0, -1.0};
    std::vector<double> g(d);
    for (int k = 0; k < d; ++k) g[k] = k;
    return g;
}

namespace {

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

// W^dagger rho W for W = U_A (x) U_B (U_B = I when absent).
CMatrix rotate(const CMatrix& rho, int db, const CMatrix& ua, const CMatrix* ub) {
    CMatrix w = kron(ua, ub ? *ub : identity(db));
    return w.adjoint() * rho * w;
}

CMatrix block_diagonal(const CMatrix& r, int da, int db) {
    CMatrix out = CMatrix::Zero(r.rows(), r.cols());
    for (int a = 0; a < da; ++a) out.block(a * db, a * db, db, db) = r.block(a * db, a * db, db, db);
    return out;
}

// Sum of squared moduli outside the diagonal blocks (one-sided) or outside
// the diagonal (two-sided) of x expressed in the given local bases.
double offdiag_weight(const CMatrix& x, int da, int db, const CMatrix& ua, const CMatrix* ub) {
    CMatrix r = rotate(x, db, ua, ub);
    double total = r.squaredNorm();
    if (ub) return total - r.diagonal().squaredNorm();
    double kept = 0;
    for (int a = 0; a < da; ++a) kept += r.block(a * db, a * db, db, db).squaredNorm();
    return total - kept;
}

struct Prepared {
    const BipartiteState& s;
    int da, db;
    double s_ab, s_a, s_b, mi;
    CMatrix sqrt_rho;
    explicit Prepared(const BipartiteState& st)
        : s(st), da(st.d_a()), db(st.d_b()), s_ab(von_neumann_entropy(st.matrix())),
          s_a(von_neumann_entropy(st.marginal_a())), s_b(von_neumann_entropy(st.marginal_b())),
          mi(s_a + s_b - s_ab), sqrt_rho(sqrtm_psd(st.matrix())) {}
};

InfoLoss info_loss_prepared(const Prepared& p, const CMatrix& va, const CMatrix* vb) {
    const CMatrix& rho = p.s.matrix();
    if (va.rows() != p.da || (vb && vb->rows() != p.db)) throw DimMismatch("info_loss: POVM dimension mismatch");
    if (!vb) {
        CMatrix idb = identity(p.db);
        std::vector<double> probs;
        double cond = 0;
        for (Eigen::Index k = 0; k < va.cols(); ++k) {
            CMatrix m = kron(CMatrix(va.col(k)), idb);
            CMatrix x = m.adjoint() * rho * m;
            x = (x + x.adjoint()) * 0.5; // dividing by a tiny pk must not amplify rounding
            double pk = x.trace().real();
            probs.push_back(std::max(pk, 0.0));
            if (pk > 1e-15) cond += pk * von_neumann_entropy(CMatrix(x / pk));
        }
        double h = shannon_entropy(probs);
        return {p.mi - p.s_b + cond, h + cond - p.s_ab};
    }
    RMatrix joint(va.cols(), vb->cols());
    for (Eigen::Index k = 0; k < va.cols(); ++k)
        for (Eigen::Index l = 0; l < vb->cols(); ++l) {
            CVector v = kron(CMatrix(va.col(k)), CMatrix(vb->col(l)));
            joint(k, l) = std::max((v.adjoint() * rho * v).value().real(), 0.0);
        }
    RVector pa = joint.rowwise().sum(), pb = joint.colwise().sum().transpose();
    Eigen::Map<const RVector> flat(joint.data(), joint.size());
    double h = shannon_entropy(RVector(flat));
    double icl = shannon_entropy(pa) + shannon_entropy(pb) - h;
    return {p.mi - icl, h - p.s_ab};
}

MeasureReport make_report(const char* id, MeasureSide side, const OptResult& r, const char* route,
                          const OptConfig& cfg) {
    MeasureReport rep;
    rep.measure_id = id;
    rep.side = side;
    rep.value = r.value;
    rep.argmin = r.arg;
    rep.route = route;
    rep.bound = r.bound;
    rep.cfg = cfg;
    rep.metadata["evaluations"] = double(r.evaluations);
    return rep;
}

// Minimizes f over bases on A (side A) or product bases (side AB).
OptResult search(const Prepared& p, MeasureSide side, const OptConfig& cfg,
                 const std::function<double(const CMatrix&, const CMatrix*)>& f,
                 std::span<const BasisPair> seed_pairs = {}) {
    if (side == MeasureSide::A)
        return min_over_bases(p.da, [&](const LocalBasis& b) { return f(b.unitary(), nullptr); }, cfg);
    return min_over_basis_pairs(
        p.da, p.db, [&](const LocalBasis& a, const LocalBasis& b) { return f(a.unitary(), &b.unitary()); }, cfg,
        seed_pairs);
}

double mig_objective(const Prepared& p, DistanceId id, const CMatrix& ua, const CMatrix* ub) {
    CMatrix r = rotate(p.s.matrix(), p.db, ua, ub);
    CMatrix pr = ub ? CMatrix(r.diagonal().asDiagonal()) : block_diagonal(r, p.da, p.db);
    switch (id) {
    case DistanceId::S1: return hermitian_trace_norm(CMatrix(r - pr));
    case DistanceId::S2: return (r - pr).squaredNorm();
    default: return distance(id, r, pr).value;
    }
}

// Optimal success probability of discriminating the weighted operators
// omega_a, by the fixed-point iteration E_a <- R^-1 w_a E_a w_a R^-1 with
// R = (sum_a w_a E_a w_a)^{1/2}, started from the pretty-good measurement.
// Rounding can push sum_a E_a slightly above I, so each iterate's success is
// divided by the top eigenvalue of that sum: the returned value is always
// achievable (a lower bound on the optimum).
double discrimination_success(const std::vector<CMatrix>& omega, int max_iter = 5000) {
    const Eigen::Index n = omega.front().rows();
    const std::size_t m = omega.size();
    // Pseudo-inverse square root of h and the projector onto its kernel.
    auto inv_sqrt = [n](const CMatrix& h, CMatrix& kernel) {
        EigDecomposition ed = herm_eig(CMatrix((h + h.adjoint()) / 2.0));
        double cut = 1e-12 * std::max(ed.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
        RVector inv(n), ker(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            bool live = ed.eigenvalues(i) > cut;
            inv(i) = live ? 1.0 / std::sqrt(ed.eigenvalues(i)) : 0.0;
            ker(i) = live ? 0.0 : 1.0;
        }
        kernel = ed.eigenvectors * ker.asDiagonal() * ed.eigenvectors.adjoint();
        return CMatrix(ed.eigenvectors * inv.asDiagonal() * ed.eigenvectors.adjoint());
    };
    auto success = [&](const std::vector<CMatrix>& e) {
        double t = 0;
        CMatrix sum = CMatrix::Zero(n, n);
        for (std::size_t a = 0; a < m; ++a) {
            t += (e[a] * omega[a]).trace().real();
            sum += e[a];
        }
        double top = herm_eigenvalues(CMatrix((sum + sum.adjoint()) / 2.0)).maxCoeff();
        return t / std::max(top, 1.0);
    };
    CMatrix total = CMatrix::Zero(n, n), kernel;
    for (const CMatrix& w : omega) total += w;
    CMatrix rinv = inv_sqrt(total, kernel);
    std::vector<CMatrix> e(m);
    for (std::size_t a = 0; a < m; ++a) e[a] = rinv * omega[a] * rinv;
    e[0] += kernel;
    double best = success(e);
    for (int it = 0; it < max_iter; ++it) {
        CMatrix r2 = CMatrix::Zero(n, n);
        for (std::size_t a = 0; a < m; ++a) r2 += omega[a] * e[a] * omega[a];
        rinv = inv_sqrt(r2, kernel);
        for (std::size_t a = 0; a < m; ++a) {
            e[a] = rinv * omega[a] * e[a] * omega[a] * rinv;
            e[a] = (e[a] + e[a].adjoint()) / 2.0;
        }
        e[0] += kernel;
        double s = success(e);
        bool stalled = s - best < 1e-12;
        best = std::max(best, s);
        if (stalled && it > 10) break;
    }
    return std::min(best, 1.0);
}

// The same problem when omega_k = |psi_k><psi_k| for the n columns of the
// n x n matrix psi. Some optimal POVM is then an orthonormal basis {v_k}
// (rank one on the span, dilated into the kernel), so this maximizes
// sum_k |<v_k|psi_k>|^2 by Jacobi sweeps: each 2 x 2 rotation has a closed-form
// optimum. The result is certified when the Hermitian part of
// Y = sum_k v_k <v_k|psi_k> psi_k^dagger dominates every omega_k, leaving a
// duality gap of at most 1e-8; otherwise the caller also runs the iteration.
struct JacobiDiscrimination {
    double success;
    bool certified;
};

JacobiDiscrimination pure_state_discrimination(const CMatrix& psi) {
    const Eigen::Index n = psi.cols();
    CMatrix m = psi; // V^dagger psi, with V = I to start
    CMatrix v = CMatrix::Identity(n, n);
    auto diag_sum = [&] { return m.diagonal().squaredNorm(); };
    double current = diag_sum();
    for (int sweep = 0; sweep < 200; ++sweep) {
        double before = current;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) {
                Eigen::Vector2cd b1(m(i, i), m(j, i)), b2(m(i, j), m(j, j));
                Eigen::Matrix2cd h = b1 * b1.adjoint() - b2 * b2.adjoint();
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
                Eigen::Vector2cd w1 = es.eigenvectors().col(1);
                double gain = b2.squaredNorm() + es.eigenvalues()(1) - std::norm(m(i, i)) - std::norm(m(j, j));
                if (!(gain > 1e-16)) continue;
                Eigen::Matrix2cd w;
                w.col(0) = w1;
                w.col(1) = Eigen::Vector2cd(-std::conj(w1(1)), std::conj(w1(0)));
                Eigen::Matrix<cplx, 2, Eigen::Dynamic> rows(2, n);
                rows.row(0) = m.row(i);
                rows.row(1) = m.row(j);
                rows = w.adjoint() * rows;
                m.row(i) = rows.row(0);
                m.row(j) = rows.row(1);
                Eigen::Matrix<cplx, Eigen::Dynamic, 2> cols(n, 2);
                cols.col(0) = v.col(i);
                cols.col(1) = v.col(j);
                cols = cols * w;
                v.col(i) = cols.col(0);
                v.col(j) = cols.col(1);
            }
        current = diag_sum();
        if (current - before < 1e-15) break;
    }
    CMatrix y = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) y += v.col(k) * m(k, k) * psi.col(k).adjoint();
    // Any Hermitian Z with Z >= omega_k for all k bounds the optimum by Tr Z.
    // Z = P (Y + Y^dagger)/2 P + eps P, with P the projector onto the span of
    // the psi_k, has trace current + rank * eps.
    EigDecomposition span = herm_eig(CMatrix(psi * psi.adjoint()));
    double cut = 1e-12 * std::max(span.eigenvalues.maxCoeff(), 1e-300);
    RVector on = span.eigenvalues.unaryExpr([cut](double x) { return x > cut ? 1.0 : 0.0; });
    CMatrix proj = span.eigenvectors * on.asDiagonal() * span.eigenvectors.adjoint();
    CMatrix z = proj * ((y + y.adjoint()) / 2.0) * proj;
    double eps = 0;
    for (Eigen::Index k = 0; k < n; ++k)
        eps = std::max(eps, -herm_eigenvalues(CMatrix(z - psi.col(k) * psi.col(k).adjoint())).minCoeff());
    bool certified = on.sum() * eps <= 1e-8;
    return {std::min(current, 1.0), certified};
}

double bures_cq_fidelity(const Prepared& p, const CMatrix& ua, const CMatrix* ub) {
    const CMatrix& sq = p.sqrt_rho;
    if (!ub && p.da == 2) {
        // Two outcomes: Helstrom, 1/2 (1 + |w_0 - w_1|_1).
        CMatrix k = ua * RVector(RVector::LinSpaced(2, 1, -1)).cast<cplx>().asDiagonal() * ua.adjoint();
        CMatrix m = sq * kron(k, identity(p.db)) * sq;
        return std::min(1.0, 0.5 * (1.0 + hermitian_trace_norm(m)));
    }
    JacobiDiscrimination jacobi{0, false};
    if (ub) {
        jacobi = pure_state_discrimination(sq * kron(ua, *ub));
        if (jacobi.certified) return jacobi.success;
    }
    std::vector<CMatrix> omega;
    for (int a = 0; a < p.da; ++a) {
        CMatrix pa = ua.col(a) * ua.col(a).adjoint();
        if (!ub) {
            omega.push_back(sq * kron(pa, identity(p.db)) * sq);
            continue;
        }
        for (int b = 0; b < p.db; ++b) {
            CMatrix pb = ub->col(b) * ub->col(b).adjoint();
            omega.push_back(sq * kron(pa, pb) * sq);
        }
    }
    if (ub) return std::max(jacobi.success, discrimination_success(omega, 300));
    return discrimination_success(omega);
}

double bures_from_fidelity(double f) { return 2.0 * (1.0 - std::sqrt(std::clamp(f, 0.0, 1.0))); }

CMatrix local_a(const Prepared& p, const CMatrix& u) { return kron(u, identity(p.db)); }

void require_valid_spectrum(std::span<const double> g, int d) {
    if (static_cast<int>(g.size()) != d) throw DimMismatch("spectrum size must equal d_A");
    check_nondegenerate(g);
}

} // namespace

InfoLoss info_loss(const BipartiteState& s, const CMatrix& v_a, const CMatrix* v_b) {
    return info_loss_prepared(Prepared(s), v_a, v_b);
}

MeasureReport mig(const BipartiteState& s, DistanceId id, MeasureSide side, const OptConfig& cfg) {
    if (id == DistanceId::L1) throw Unsupported("mig: the l1 distance is handled by negativity_of_quantumness");
    Prepared p(s);
    OptResult r = search(p, side, cfg, [&](const CMatrix& ua, const CMatrix* ub) {
        return mig_objective(p, id, ua, ub);
    });
    std::string mid = std::string("mig_") + to_string(id);
    return make_report(mid.c_str(), side, r, "lpm_search", cfg);
}

MeasureReport geometric(const BipartiteState& s, DistanceId id, MeasureSide side, const OptConfig& cfg,
                        GeometricMode mode) {
    std::string gid = std::string("geometric_") + to_string(id);
    auto via_mig = [&](const char* route) {
        MeasureReport rep = mig(s, id, side, cfg);
        rep.measure_id = gid;
        rep.route = route;
        return rep;
    };
    switch (id) {
    case DistanceId::RE: return via_mig("mig_re");
    case DistanceId::S2:
        if (side == MeasureSide::A) return via_mig("mig_s2");
        break;
    case DistanceId::S1:
        if (side == MeasureSide::A && s.d_a() == 2) return via_mig("mig_s1_qubit");
        if (mode == GeometricMode::best_effort) return via_mig("mig_s1_upper_bound");
        break;
    case DistanceId::Hellinger: {
        // G_He = 2 - 2 sqrt(1 - Q^M2(sqrt rho)), sqrt(rho) used as is.
        Prepared p(s);
        OptResult r = search(p, side, cfg, [&](const CMatrix& ua, const CMatrix* ub) {
            return offdiag_weight(p.sqrt_rho, p.da, p.db, ua, ub);
        });
        double q = r.value;
        r.value = 2.0 - 2.0 * std::sqrt(std::max(0.0, 1.0 - q));
        MeasureReport rep = make_report(gid.c_str(), side, r, "hs_of_sqrt_rho", cfg);
        rep.metadata["q_m2_sqrt_rho"] = q;
        return rep;
    }
    case DistanceId::Bures: {
        Prepared p(s);
        OptResult r = search(p, side, cfg, [&](const CMatrix& ua, const CMatrix* ub) {
            return bures_from_fidelity(bures_cq_fidelity(p, ua, ub));
        });
        return make_report(gid.c_str(), side, r, "cq_discrimination", cfg);
    }
    default: break;
    }
    throw Unsupported("geometric: no exact route for distance '" + std::string(to_string(id)) + "' on side " +
                      to_string(side) + " with d_A = " + std::to_string(s.d_a()));
}

namespace {

OptResult lgm_search(const Prepared& p, MeasureSide side, const OptConfig& cfg, bool entropy_loss,
                     const std::vector<CMatrix>& lpm_seed, std::span<const std::vector<CMatrix>> extra_seeds) {
    auto loss = [&](const CMatrix& va, const CMatrix* vb) {
        InfoLoss l = info_loss_prepared(p, va, vb);
        return entropy_loss ? l.entropy : l.mutual_info;
    };
    // N = d^2 outcomes contains every smaller rank-one POVM (zero columns), so
    // one chart covers N in {d, ..., d^2}.
    const int na = p.da * p.da, nb = p.db * p.db;
    if (side == MeasureSide::A) {
        std::vector<CMatrix> seeds{embed_basis_in_isometry(lpm_seed[0], na)};
        for (const auto& e : extra_seeds) seeds.push_back(e[0]);
        return min_over_isometries(p.da, na, [&](const CMatrix& v) { return loss(v, nullptr); }, cfg, seeds);
    }
    std::vector<std::pair<CMatrix, CMatrix>> seeds{
        {embed_basis_in_isometry(lpm_seed[0], na), embed_basis_in_isometry(lpm_seed[1], nb)}};
    for (const auto& e : extra_seeds) seeds.push_back({e[0], e[1]});
    return min_over_isometry_pairs(
        p.da, na, p.db, nb, [&](const CMatrix& va, const CMatrix& vb) { return loss(va, &vb); }, cfg, seeds);
}

OptResult lpm_info_search(const Prepared& p, MeasureSide side, const OptConfig& cfg, bool entropy_loss,
                          std::span<const BasisPair> seed_pairs = {}) {
    return search(p, side, cfg, [&](const CMatrix& ua, const CMatrix* ub) {
        InfoLoss l = info_loss_prepared(p, ua, ub);
        return entropy_loss ? l.entropy : l.mutual_info;
    }, seed_pairs);
}

MeasureReport informational(const BipartiteState& s, MeasureSide side, MeasurementClass mclass,
                            const OptConfig& cfg, bool entropy_loss, const char* id) {
    Prepared p(s);
    OptResult r = lpm_info_search(p, side, cfg, entropy_loss);
    const char* route = "lpm_search";
    if (mclass == MeasurementClass::LGM) {
        OptResult g = lgm_search(p, side, cfg, entropy_loss, r.arg, {});
        g.evaluations += r.evaluations;
        r = std::move(g);
        route = "lgm_search_seeded_by_lpm";
    }
    MeasureReport rep = make_report(id, side, r, route, cfg);
    rep.metadata["mutual_information"] = p.mi;
    return rep;
}

} // namespace

MeasureReport discord(const BipartiteState& s, MeasureSide side, MeasurementClass mclass, const OptConfig& cfg) {
    return informational(s, side, mclass, cfg, false, "discord");
}

MeasureReport classical_correlations(const BipartiteState& s, MeasureSide side, MeasurementClass mclass,
                                     const OptConfig& cfg) {
    MeasureReport rep = discord(s, side, mclass, cfg);
    double d = rep.value;
    rep.measure_id = "classical_correlations";
    rep.value = rep.metadata["mutual_information"] - d;
    rep.metadata["discord"] = d;
    // J = I - discord is a lower bound when discord is an upper bound.
    rep.route += "_lower_bound";
    return rep;
}

MeasureReport deficit(const BipartiteState& s, MeasureSide side, MeasurementClass mclass, const OptConfig& cfg) {
    return informational(s, side, mclass, cfg, true, "deficit");
}

namespace {

CMatrix marginal_eigenbasis(const CMatrix& marginal, const char* which) {
    EigDecomposition e = herm_eig(marginal);
    for (Eigen::Index k = 1; k < e.eigenvalues.size(); ++k)
        if (e.eigenvalues(k) - e.eigenvalues(k - 1) <= 1e-8)
            throw DegenerateMarginal(std::string("marginal ") + which + " has a degenerate spectrum");
    return e.eigenvectors;
}

} // namespace

MeasureReport fixed_basis_informational(const BipartiteState& s, FixedBasisMode mode, const OptConfig& cfg) {
    if (mode == FixedBasisMode::AMID) {
        MeasureReport rep = discord(s, MeasureSide::AB, MeasurementClass::LPM, cfg);
        rep.measure_id = "amid";
        return rep;
    }
    Prepared p(s);
    MeasureReport rep;
    rep.cfg = cfg;
    rep.bound = Bound::exact;
    rep.route = "marginal_eigenbasis";
    CMatrix ua = marginal_eigenbasis(s.marginal_a(), "A");
    if (mode == FixedBasisMode::MID) {
        CMatrix ub = marginal_eigenbasis(s.marginal_b(), "B");
        rep.measure_id = "mid";
        rep.side = MeasureSide::AB;
        rep.value = info_loss_prepared(p, ua, &ub).mutual_info;
        rep.argmin = {ua, ub};
        return rep;
    }
    InfoLoss l = info_loss_prepared(p, ua, nullptr);
    rep.side = MeasureSide::A;
    rep.argmin = {ua};
    if (mode == FixedBasisMode::diagonal_discord) {
        rep.measure_id = "diagonal_discord";
        rep.value = l.mutual_info;
    } else {
        rep.measure_id = "thermal_diagonal";
        rep.value = l.entropy;
    }
    return rep;
}

namespace {

double noq_l1(const Prepared& p, const CMatrix& ua, const CMatrix* ub) {
    CMatrix r = rotate(p.s.matrix(), p.db, ua, ub);
    if (ub) return r.cwiseAbs().sum() - 1.0;
    double t = 0;
    for (int i = 0; i < p.da; ++i)
        for (int j = 0; j < p.da; ++j) t += schatten_norm(CMatrix(r.block(i * p.db, j * p.db, p.db, p.db)), 1);
    return t - 1.0;
}

double noq_activation(const Prepared& p, const CMatrix& ua, const CMatrix* ub) {
    LocalBasis a(ua);
    std::optional<LocalBasis> b;
    if (ub) b.emplace(*ub);
    return negativity(premeasurement_state(p.s, a, b));
}

} // namespace

MeasureReport negativity_of_quantumness(const BipartiteState& s, MeasureSide side, NoQRoute route,
                                        const OptConfig& cfg) {
    Prepared p(s);
    OptResult r = search(p, side, cfg, [&](const CMatrix& ua, const CMatrix* ub) {
        return route == NoQRoute::l1 ? noq_l1(p, ua, ub) : noq_activation(p, ua, ub);
    });
    return make_report("negativity_of_quantumness", side, r, route == NoQRoute::l1 ? "l1_coherence" : "activation",
                       cfg);
}

MeasureReport unitary_response(const BipartiteState& s, DistanceId id, const OptConfig& cfg, ResponseRoute route) {
    std::string uid = std::string("response_") + to_string(id);
    if (id != DistanceId::S1 && id != DistanceId::S2 && id != DistanceId::Bures && id != DistanceId::Hellinger)
        throw Unsupported("unitary_response: distance must be s1, s2, bures or hellinger");
    Prepared p(s);
    if (route == ResponseRoute::closed) {
        if (id != DistanceId::Hellinger || p.da != 2)
            throw Unsupported("unitary_response: the closed route needs the Hellinger distance and a qubit A");
        OptResult r = min_over_bases(2, [&](const LocalBasis& b) {
            return offdiag_weight(p.sqrt_rho, p.da, p.db, b.unitary(), nullptr);
        }, cfg);
        r.value *= 4.0;
        return make_report(uid.c_str(), MeasureSide::A, r, "four_q_m2_sqrt_rho", cfg);
    }
    const CMatrix& rho = s.matrix();
    OptResult r = min_over_bases(p.da, [&](const LocalBasis& b) {
        CMatrix w = local_a(p, harmonic_unitary(b));
        return distance(id, rho, CMatrix(w * rho * w.adjoint())).value;
    }, cfg);
    MeasureReport rep = make_report(uid.c_str(), MeasureSide::A, r, "harmonic_unitary_search", cfg);
    if (id == DistanceId::Hellinger && p.da == 2) {
        MeasureReport closed = unitary_response(s, id, cfg, ResponseRoute::closed);
        rep.metadata["closed_route_value"] = closed.value;
    }
    return rep;
}

MeasureReport discriminating_strength(const BipartiteState& s, std::span<const cplx> phases, const OptConfig& cfg) {
    Prepared p(s);
    std::vector<cplx> ph(phases.begin(), phases.end());
    if (ph.empty()) {
        for (int k = 0; k < p.da; ++k) ph.push_back(std::polar(1.0, 2 * std::numbers::pi * k / p.da));
        if (p.da == 2) ph[1] = -1.0;
    }
    if (static_cast<int>(ph.size()) != p.da) throw DimMismatch("discriminating_strength: need d_A phases");
    for (std::size_t i = 0; i < ph.size(); ++i) {
        if (std::abs(std::abs(ph[i]) - 1.0) > 1e-9) throw DomainError("discriminating_strength: phases must be unimodular");
        for (std::size_t j = i + 1; j < ph.size(); ++j)
            if (std::abs(ph[i] - ph[j]) < 1e-9) throw DegenerateSpectrum("discriminating_strength: repeated phase");
    }
    const CMatrix& rho = s.matrix();
    OptResult r = min_over_bases(p.da, [&](const LocalBasis& b) {
        CMatrix w = local_a(p, phase_unitary(b, ph));
        return -chernoff_C(rho, CMatrix(w * rho * w.adjoint()));
    }, cfg);
    r.value = 1.0 + r.value;
    return make_report("discriminating_strength", MeasureSide::A, r, "chernoff_search", cfg);
}

MeasureReport lqu(const BipartiteState& s, std::span<const double> spectrum, const OptConfig& cfg) {
    Prepared p(s);
    std::vector<double> g = spectrum.empty() ? default_spectrum(p.da) : std::vector<double>(spectrum.begin(), spectrum.end());
    require_valid_spectrum(g, p.da);
    OptResult r = min_over_bases(p.da, [&](const LocalBasis& b) {
        CMatrix k = local_a(p, local_observable(b, g));
        CMatrix c = p.sqrt_rho * k - k * p.sqrt_rho;
        return 0.5 * c.squaredNorm();
    }, cfg);
    return make_report("lqu", MeasureSide::A, r, "skew_information_search", cfg);
}

MeasureReport interferometric_power(const BipartiteState& s, std::span<const double> spectrum, const OptConfig& cfg) {
    Prepared p(s);
    std::vector<double> g = spectrum.empty() ? default_spectrum(p.da) : std::vector<double>(spectrum.begin(), spectrum.end());
    require_valid_spectrum(g, p.da);
    const CMatrix& rho = s.matrix();
    OptResult r = min_over_bases(p.da, [&](const LocalBasis& b) {
        return quantum_fisher_information(rho, local_a(p, local_observable(b, g)));
    }, cfg);
    double raw = r.value;
    r.value = 0.25 * raw;
    MeasureReport rep = make_report("interferometric_power", MeasureSide::A, r, "qfi_search", cfg);
    rep.metadata["min_qfi"] = raw;
    return rep;
}

WheelValues inequality_wheel(const BipartiteState& s, const OptConfig& cfg) {
    Prepared p(s);
    WheelValues w{};
    auto pair_of = [](const OptResult& r) { return BasisPair{LocalBasis(r.arg[0]), LocalBasis(r.arg[1])}; };
    auto with_seeds = [&](std::initializer_list<const OptResult*> rs) {
        OptConfig c = cfg;
        for (const OptResult* r : rs) c.seed_bases.push_back(LocalBasis(r->arg[0]));
        return c;
    };

    // LPM, two-sided: S first, then I seeded with the S argmin (I <= S per basis).
    OptResult s_ab = lpm_info_search(p, MeasureSide::AB, cfg, true);
    BasisPair s_ab_pair = pair_of(s_ab);
    OptResult i_ab = lpm_info_search(p, MeasureSide::AB, cfg, false, std::span<const BasisPair>(&s_ab_pair, 1));
    // One-sided seeded with the A part of the two-sided argmins (A <= AB per basis).
    OptResult s_a = lpm_info_search(p, MeasureSide::A, with_seeds({&s_ab}), true);
    OptResult i_a = lpm_info_search(p, MeasureSide::A, with_seeds({&i_ab, &s_a}), false);
    w.lpm_s_ab = s_ab.value;
    w.lpm_i_ab = i_ab.value;
    w.lpm_s_a = s_a.value;
    w.lpm_i_a = i_a.value;

    // LGM searches are seeded with their LPM counterparts (LGM <= LPM), and
    // follow the same cross-seeding pattern.
    std::vector<std::vector<CMatrix>> none;
    OptResult g_s_ab = lgm_search(p, MeasureSide::AB, cfg, true, s_ab.arg, none);
    std::vector<std::vector<CMatrix>> seed_i_ab{g_s_ab.arg};
    OptResult g_i_ab = lgm_search(p, MeasureSide::AB, cfg, false, i_ab.arg, seed_i_ab);
    std::vector<std::vector<CMatrix>> seed_s_a{{g_s_ab.arg[0]}};
    OptResult g_s_a = lgm_search(p, MeasureSide::A, cfg, true, s_a.arg, seed_s_a);
    std::vector<std::vector<CMatrix>> seed_i_a{{g_i_ab.arg[0]}, {g_s_a.arg[0]}};
    OptResult g_i_a = lgm_search(p, MeasureSide::A, cfg, false, i_a.arg, seed_i_a);
    w.lgm_s_ab = g_s_ab.value;
    w.lgm_i_ab = g_i_ab.value;
    w.lgm_s_a = g_s_a.value;
    w.lgm_i_a = g_i_a.value;
    return w;
}

std::vector<WheelArrow> wheel_arrows(const WheelValues& w) {
    return {
        {"lgm_i_a", "lpm_i_a", w.lgm_i_a, w.lpm_i_a},     {"lgm_s_a", "lpm_s_a", w.lgm_s_a, w.lpm_s_a},
        {"lgm_i_ab", "lpm_i_ab", w.lgm_i_ab, w.lpm_i_ab}, {"lgm_s_ab", "lpm_s_ab", w.lgm_s_ab, w.lpm_s_ab},
        {"lpm_i_a", "lpm_i_ab", w.lpm_i_a, w.lpm_i_ab},   {"lpm_s_a", "lpm_s_ab", w.lpm_s_a, w.lpm_s_ab},
        {"lgm_i_a", "lgm_i_ab", w.lgm_i_a, w.lgm_i_ab},   {"lgm_s_a", "lgm_s_ab", w.lgm_s_a, w.lgm_s_ab},
        {"lpm_i_a", "lpm_s_a", w.lpm_i_a, w.lpm_s_a},     {"lpm_i_ab", "lpm_s_ab", w.lpm_i_ab, w.lpm_s_ab},
        {"lgm_i_a", "lgm_s_a", w.lgm_i_a, w.lgm_s_a},     {"lgm_i_ab", "lgm_s_ab", w.lgm_i_ab, w.lgm_s_ab},
    };
}

} // namespace qcorr
