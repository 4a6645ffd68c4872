#include <cmath>
#include <cstdio>
#include <ostream>

#include "qcorr/channels.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/harness.hpp"

namespace qcorr {

const char* to_string(RegionClass c) {
    switch (c) {
    case RegionClass::classical_cc: return "classical_cc";
    case RegionClass::classical_cq_only: return "classical_cq_only";
    case RegionClass::classical_qc_only: return "classical_qc_only";
    case RegionClass::product: return "product";
    case RegionClass::discordant_separable: return "discordant_separable";
    case RegionClass::entangled: return "entangled";
    }
    return "?";
}

std::vector<FamilyPointXY> family_grid(double step) {
    if (!(step > 0) || step > 0.1) throw DomainError("family_grid: need 0 < step <= 0.1");
    int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
    std::vector<FamilyPointXY> pts;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i * step + j * step <= 1 + 1e-9; ++j)
            pts.push_back({std::min(1.0, i * step), std::min(1.0 - std::min(1.0, i * step), j * step)});
    return pts;
}

namespace {

constexpr double fixed_point_tol = 1e-12;
constexpr double classical_tol = 1e-8;
constexpr double entangled_tol = 1e-8;

bool is_product(const BipartiteState& s) {
    CMatrix prod = kron(s.marginal_a(), s.marginal_b());
    return (prod - s.matrix()).cwiseAbs().maxCoeff() <= fixed_point_tol;
}

// Certified classicality: the state is a fixed point of the given dephasing.
bool fixed_point(const BipartiteState& s, const LocalBasis& a, const LocalBasis* b) {
    BipartiteState d = lpm_apply(s, a, b ? std::optional<LocalBasis>(*b) : std::nullopt);
    return (d.matrix() - s.matrix()).cwiseAbs().maxCoeff() <= fixed_point_tol;
}

RegionClass classify(const BipartiteState& s, double negativity_value, const OptConfig& cfg) {
    if (is_product(s)) return RegionClass::product;
    LocalBasis comp = LocalBasis::computational(2);
    bool cq = fixed_point(s, comp, nullptr);
    bool qc = fixed_point(swap_parties(s), comp, nullptr);
    bool cc = fixed_point(s, comp, &comp);
    if (!cq) cq = classical_quantum_test(s, classical_tol, cfg).classical;
    if (!qc) qc = classical_quantum_test(swap_parties(s), classical_tol, cfg).classical;
    if (cq && qc && !cc) cc = classical_classical_test(s, classical_tol, cfg).classical;
    if (cc) return RegionClass::classical_cc;
    if (cq) return RegionClass::classical_cq_only;
    if (qc) return RegionClass::classical_qc_only;
    return negativity_value > entangled_tol ? RegionClass::entangled : RegionClass::discordant_separable;
}

} // namespace

std::vector<RegionPoint> region_map(double step, const OptConfig& cfg) {
    std::vector<FamilyPointXY> grid = family_grid(step);
    std::vector<RegionPoint> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        FamilyPointXY p = grid[i];
        BipartiteState s = family_xy(p);
        RegionPoint& r = out[i];
        r.x = p.x;
        r.y = p.y;
        r.negativity = negativity(s);
        r.cls = classify(s, r.negativity, cfg);
        r.discord_a = discord(s, MeasureSide::A, MeasurementClass::LPM, cfg).value;
        r.polynomial_entangled = xy_is_entangled(p);
    });
    return out;
}

void write_region_csv(const std::vector<RegionPoint>& pts, std::ostream& out) {
    out << "x,y,class,negativity,discord_A\n";
    char buf[160];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%s,%.12e,%.12e\n", p.x, p.y, to_string(p.cls), p.negativity,
                      p.discord_a);
        out << buf;
    }
}

} // namespace qcorr
