#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qcorr/random.hpp"

namespace qcorr {

namespace {

constexpr double pi = std::numbers::pi;

void check_cfg(const OptConfig& cfg) {
    if (cfg.grid_points < 1 || cfg.multistarts < 1 || cfg.refine_iters < 1 || !(cfg.tol_opt > 0))
        throw DomainError("OptConfig: counts must be >= 1 and tol_opt > 0");
}

// Keeps the first strictly smaller candidate (deterministic tie-break).
struct Best {
    double value = INFINITY;
    std::vector<CMatrix> arg;
    void offer(double v, std::vector<CMatrix> a) {
        if (v < value) {
            value = v;
            arg = std::move(a);
        }
    }
};

struct Chart {
    int n;
    bool qubit;
    int nparams() const { return qubit ? 2 : n * n; }
};

// Start point on a product of charts: qubit charts carry absolute angles,
// unitary charts carry a base and start at H = 0.
struct ChartPoint {
    std::vector<CMatrix> bases;
    RVector x0;
};

std::vector<CMatrix> chart_unitaries(const std::vector<Chart>& charts, const ChartPoint& p, const RVector& x) {
    std::vector<CMatrix> out;
    int off = 0;
    for (std::size_t c = 0; c < charts.size(); ++c) {
        int np = charts[c].nparams();
        if (charts[c].qubit)
            out.push_back(LocalBasis::qubit(x(off), x(off + 1)).unitary());
        else
            out.push_back(expi_hermitian(hermitian_from_params(x.segment(off, np), charts[c].n)) * p.bases[c]);
        off += np;
    }
    return out;
}

ChartPoint make_point(const std::vector<Chart>& charts, const std::vector<CMatrix>& us) {
    ChartPoint p;
    int total = 0;
    for (const auto& c : charts) total += c.nparams();
    p.x0 = RVector::Zero(total);
    int off = 0;
    for (std::size_t c = 0; c < charts.size(); ++c) {
        if (charts[c].qubit) {
            auto [t, ph] = qubit_angles(LocalBasis(us[c]));
            p.x0(off) = t;
            p.x0(off + 1) = ph;
        }
        p.bases.push_back(us[c]);
        off += charts[c].nparams();
    }
    return p;
}

using MultiObjective = std::function<double(const std::vector<CMatrix>&)>;

void refine_from(const std::vector<Chart>& charts, const ChartPoint& p, const MultiObjective& f, double step,
                 const OptConfig& cfg, Best& best, long& evals) {
    auto g = [&](const RVector& x) { return f(chart_unitaries(charts, p, x)); };
    NelderMeadResult r = nelder_mead(g, p.x0, step, cfg.refine_iters, cfg.tol_opt);
    evals += r.evaluations;
    // nelder_mead evaluates x0 first and never returns a worse point.
    best.offer(r.value, chart_unitaries(charts, p, r.x));
}

struct GridPoint {
    int j, k;
    double value;
};

// Uniform (theta, phi) grid; poles are visited once.
std::vector<GridPoint> qubit_grid(int n, const std::function<double(double, double)>& g, long& evals) {
    std::vector<GridPoint> pts;
    for (int j = 0; j <= n; ++j) {
        int kmax = (j == 0 || j == n) ? 1 : 2 * n;
        for (int k = 0; k < kmax; ++k) {
            pts.push_back({j, k, g(j * pi / n, k * pi / n)});
            ++evals;
        }
    }
    return pts;
}

const GridPoint* best_on_level(const std::vector<GridPoint>& pts, int stride) {
    const GridPoint* b = nullptr;
    for (const auto& p : pts)
        if (p.j % stride == 0 && p.k % stride == 0 && (!b || p.value < b->value)) b = &p;
    return b;
}

LocalBasis argmin_qubit_grid(int n, const std::function<double(const LocalBasis&)>& f, long& evals) {
    double bv = INFINITY;
    double bt = 0, bp = 0;
    for (int j = 0; j <= n; ++j) {
        int kmax = (j == 0 || j == n) ? 1 : 2 * n;
        for (int k = 0; k < kmax; ++k) {
            double v = f(LocalBasis::qubit(j * pi / n, k * pi / n));
            ++evals;
            if (v < bv) {
                bv = v;
                bt = j * pi / n;
                bp = k * pi / n;
            }
        }
    }
    return LocalBasis::qubit(bt, bp);
}

CMatrix random_unitary_for(const OptConfig& cfg, int n, std::uint64_t index) {
    Rng rng = make_rng(cfg.seed, index);
    return haar_unitary(n, rng);
}

} // namespace

NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0, double step,
                             int max_iters, double tol) {
    const Eigen::Index n = x0.size();
    long evals = 0;
    auto F = [&](const RVector& x) {
        ++evals;
        return f(x);
    };
    RVector best = x0;
    double fbest = F(x0);
    if (n == 0) return {best, fbest, evals};
    double cur_step = step;
    for (int round = 0; round < 12; ++round) {
        std::vector<RVector> s(n + 1, best);
        std::vector<double> fv(n + 1, fbest);
        for (Eigen::Index i = 0; i < n; ++i) {
            s[i + 1](i) += cur_step;
            fv[i + 1] = F(s[i + 1]);
        }
        std::vector<int> idx(n + 1);
        for (int it = 0; it < max_iters; ++it) {
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
            int lo = idx.front(), hi = idx.back(), nh = idx[n - 1];
            if (fv[hi] - fv[lo] <= 1e-15) break;
            double diam = 0;
            for (Eigen::Index i = 0; i <= n; ++i) diam = std::max(diam, (s[i] - s[lo]).cwiseAbs().maxCoeff());
            if (diam < 1e-11) break;
            RVector c = RVector::Zero(n);
            for (Eigen::Index i = 0; i <= n; ++i)
                if (i != hi) c += s[i];
            c /= double(n);
            RVector xr = c + (c - s[hi]);
            double fr = F(xr);
            if (fr < fv[lo]) {
                RVector xe = c + 2.0 * (c - s[hi]);
                double fe = F(xe);
                if (fe < fr) {
                    s[hi] = xe;
                    fv[hi] = fe;
                } else {
                    s[hi] = xr;
                    fv[hi] = fr;
                }
            } else if (fr < fv[nh]) {
                s[hi] = xr;
                fv[hi] = fr;
            } else {
                bool outside = fr < fv[hi];
                RVector xc = outside ? RVector(c + 0.5 * (xr - c)) : RVector(c + 0.5 * (s[hi] - c));
                double fc = F(xc);
                if (fc < std::min(fr, fv[hi])) {
                    s[hi] = xc;
                    fv[hi] = fc;
                } else {
                    for (Eigen::Index i = 0; i <= n; ++i) {
                        if (i == lo) continue;
                        s[i] = s[lo] + 0.5 * (s[i] - s[lo]);
                        fv[i] = F(s[i]);
                    }
                }
            }
        }
        int lo = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
        double improvement = fbest - fv[lo];
        if (fv[lo] < fbest) {
            fbest = fv[lo];
            best = s[lo];
        }
        if (improvement <= tol) break;
        cur_step = std::max(cur_step * 0.5, 1e-4);
    }
    return {best, fbest, evals};
}

ScalarMin min_scalar(const std::function<double(double)>& f, double a, double b, bool unimodal) {
    if (!(a < b)) throw DomainError("min_scalar: need a < b");
    auto golden = [&](double lo, double hi) {
        const double r = (std::sqrt(5.0) - 1) / 2;
        double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        while (hi - lo > 1e-7) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - r * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + r * (hi - lo);
                f2 = f(x2);
            }
        }
        return f1 <= f2 ? ScalarMin{x1, f1} : ScalarMin{x2, f2};
    };
    ScalarMin best{a, f(a)};
    double fb = f(b);
    if (fb < best.value) best = {b, fb};
    ScalarMin inner;
    if (unimodal) {
        inner = golden(a, b);
    } else {
        const double h = 1e-4 * (b - a);
        ScalarMin scan{a, best.value};
        for (long i = 1; a + i * h < b; ++i) {
            double x = a + i * h, v = f(x);
            if (v < scan.value) scan = {x, v};
        }
        inner = golden(std::max(a, scan.arg - h), std::min(b, scan.arg + h));
        if (scan.value < inner.value) inner = scan;
    }
    if (inner.value < best.value) best = inner;
    return best;
}

void validate_config(const OptConfig& cfg) { check_cfg(cfg); }

OptResult min_over_bases(int d, const BasisObjective& f, const OptConfig& cfg) {
    check_cfg(cfg);
    if (d < 1) throw DomainError("min_over_bases: d must be positive");
    for (const auto& sb : cfg.seed_bases)
        if (sb.dim() != d) throw DimMismatch("min_over_bases: seed basis has wrong dimension");
    OptResult res;
    Best best;
    MultiObjective mf = [&](const std::vector<CMatrix>& us) { return f(LocalBasis(us[0])); };
    if (d == 1) {
        CMatrix one = CMatrix::Identity(1, 1);
        res.value = f(LocalBasis(one));
        res.arg = {one};
        res.evaluations = 1;
        return res;
    }
    long evals = 0;
    if (d == 2) {
        std::vector<Chart> charts{{2, true}};
        const int n = cfg.grid_points;
        auto g = [&](double t, double p) { return f(LocalBasis::qubit(t, p)); };
        std::vector<GridPoint> pts = qubit_grid(n, g, evals);
        for (const auto& p : pts) best.offer(p.value, {LocalBasis::qubit(p.j * pi / n, p.k * pi / n).unitary()});
        // Refinement from the best point of every nested dyadic sub-grid: the
        // runs for N are a subset of the runs for 2N, so doubling the grid
        // can only lower the result.
        std::vector<int> levels{n};
        for (int l = n; l % 2 == 0 && l / 2 >= 2; l /= 2) levels.push_back(l / 2);
        std::reverse(levels.begin(), levels.end());
        for (int l : levels) {
            const GridPoint* gp = best_on_level(pts, n / l);
            ChartPoint cp;
            cp.bases = {CMatrix::Identity(2, 2)};
            cp.x0 = RVector(2);
            cp.x0 << gp->j * pi / n, gp->k * pi / n;
            refine_from(charts, cp, mf, pi / l, cfg, best, evals);
        }
        for (const auto& sb : cfg.seed_bases) {
            ++evals;
            best.offer(f(sb), {sb.unitary()});
            refine_from(charts, make_point(charts, {sb.unitary()}), mf, 0.1, cfg, best, evals);
        }
    } else {
        std::vector<Chart> charts{{d, false}};
        std::vector<std::pair<CMatrix, double>> starts{{CMatrix::Identity(d, d), 0.3}};
        for (const auto& sb : cfg.seed_bases) starts.push_back({sb.unitary(), 0.1});
        for (int m = 0; m < cfg.multistarts; ++m) starts.push_back({random_unitary_for(cfg, d, m), 0.3});
        for (const auto& [u, step] : starts) {
            ++evals;
            best.offer(f(LocalBasis(u)), {u});
            refine_from(charts, make_point(charts, {u}), mf, step, cfg, best, evals);
        }
    }
    res.value = best.value;
    res.arg = std::move(best.arg);
    res.evaluations = evals;
    return res;
}

OptResult min_over_basis_pairs(int d_a, int d_b, const PairObjective& f, const OptConfig& cfg,
                               std::span<const BasisPair> seed_pairs) {
    check_cfg(cfg);
    for (const auto& sb : cfg.seed_bases)
        if (sb.dim() != d_a) throw DimMismatch("min_over_basis_pairs: seed basis has wrong dimension");
    std::vector<BasisPair> pairs(cfg.seed_pairs);
    pairs.insert(pairs.end(), seed_pairs.begin(), seed_pairs.end());
    for (const auto& sp : pairs)
        if (sp.a.dim() != d_a || sp.b.dim() != d_b)
            throw DimMismatch("min_over_basis_pairs: seed pair has wrong dimension");
    Best best;
    long evals = 0;
    std::vector<Chart> charts{{d_a, d_a == 2}, {d_b, d_b == 2}};
    MultiObjective mf = [&](const std::vector<CMatrix>& us) { return f(LocalBasis(us[0]), LocalBasis(us[1])); };
    auto run = [&](const LocalBasis& a, const LocalBasis& b, double step) {
        ++evals;
        best.offer(f(a, b), {a.unitary(), b.unitary()});
        refine_from(charts, make_point(charts, {a.unitary(), b.unitary()}), mf, step, cfg, best, evals);
    };
    for (const auto& sp : pairs) run(sp.a, sp.b, 0.1);
    if (d_a == 2 && d_b == 2) {
        // Alternating grid sweeps from a few B starts and from each A seed.
        const int n = cfg.grid_points;
        auto sweep_a = [&](const LocalBasis& b) {
            return argmin_qubit_grid(n, [&](const LocalBasis& a) { return f(a, b); }, evals);
        };
        auto sweep_b = [&](const LocalBasis& a) {
            return argmin_qubit_grid(n, [&](const LocalBasis& b) { return f(a, b); }, evals);
        };
        for (const auto& sb : cfg.seed_bases) {
            LocalBasis b = sweep_b(sb);
            run(sb, b, 0.1);
            LocalBasis a = sweep_a(b);
            run(a, b, pi / n);
        }
        const LocalBasis starts[] = {LocalBasis::computational(2), LocalBasis::hadamard(),
                                     LocalBasis::qubit(pi / 2, pi / 2)};
        for (const LocalBasis& b0 : starts) {
            LocalBasis a = sweep_a(b0);
            LocalBasis b = sweep_b(a);
            a = sweep_a(b);
            run(a, b, pi / n);
        }

    } else {
        run(LocalBasis::computational(d_a), LocalBasis::computational(d_b), 0.3);
        for (const auto& sb : cfg.seed_bases) run(sb, LocalBasis::computational(d_b), 0.1);
        for (int m = 0; m < cfg.multistarts; ++m)
            run(LocalBasis(random_unitary_for(cfg, d_a, 2 * m)), LocalBasis(random_unitary_for(cfg, d_b, 2 * m + 1)),
                0.3);
    }
    OptResult res;
    res.value = best.value;
    res.arg = std::move(best.arg);
    res.evaluations = evals;
    return res;
}

CMatrix embed_basis_in_isometry(const CMatrix& basis_unitary, int n) {
    Eigen::Index d = basis_unitary.rows();
    if (n < d) throw DomainError("embed_basis_in_isometry: n < d");
    CMatrix w = CMatrix::Identity(n, n);
    w.topLeftCorner(d, d) = basis_unitary;
    return w;
}

OptResult min_over_isometries(int d, int n, const IsometryObjective& f, const OptConfig& cfg,
                              std::span<const CMatrix> seeds) {
    check_cfg(cfg);
    if (n < d) throw DomainError("min_over_isometries: need n >= d");
    Best best;
    long evals = 0;
    std::vector<Chart> charts{{n, false}};
    MultiObjective mf = [&](const std::vector<CMatrix>& us) { return f(us[0].topRows(d)); };
    auto run = [&](const CMatrix& w, double step) {
        if (w.rows() != n || w.cols() != n) throw DimMismatch("min_over_isometries: seed has wrong shape");
        ++evals;
        best.offer(f(w.topRows(d)), {w});
        refine_from(charts, make_point(charts, {w}), mf, step, cfg, best, evals);
    };
    for (const auto& w : seeds) run(w, 0.1);
    for (int m = 0; m < cfg.multistarts; ++m) run(random_unitary_for(cfg, n, 1000 + m), 0.3);
    OptResult res;
    res.value = best.value;
    res.arg = std::move(best.arg);
    res.evaluations = evals;
    return res;
}

OptResult min_over_isometry_pairs(int d_a, int n_a, int d_b, int n_b, const IsometryPairObjective& f,
                                  const OptConfig& cfg, std::span<const std::pair<CMatrix, CMatrix>> seeds) {
    check_cfg(cfg);
    if (n_a < d_a || n_b < d_b) throw DomainError("min_over_isometry_pairs: need n >= d");
    Best best;
    long evals = 0;
    std::vector<Chart> charts{{n_a, false}, {n_b, false}};
    MultiObjective mf = [&](const std::vector<CMatrix>& us) { return f(us[0].topRows(d_a), us[1].topRows(d_b)); };
    auto run = [&](const CMatrix& wa, const CMatrix& wb, double step) {
        ++evals;
        best.offer(f(wa.topRows(d_a), wb.topRows(d_b)), {wa, wb});
        refine_from(charts, make_point(charts, {wa, wb}), mf, step, cfg, best, evals);
    };
    for (const auto& [wa, wb] : seeds) {
        if (wa.rows() != n_a || wb.rows() != n_b) throw DimMismatch("min_over_isometry_pairs: seed shape");
        run(wa, wb, 0.1);
    }
    for (int m = 0; m < cfg.multistarts; ++m)
        run(random_unitary_for(cfg, n_a, 2000 + 2 * m), random_unitary_for(cfg, n_b, 2001 + 2 * m), 0.3);
    OptResult res;
    res.value = best.value;
    res.arg = std::move(best.arg);
    res.evaluations = evals;
    return res;
}

} // namespace qcorr
