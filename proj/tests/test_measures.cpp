#include <doctest.h>

#include "gen.hpp"
#include "oracles.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/metrics.hpp"

using namespace qcorr;

namespace {

constexpr MeasureSide A = MeasureSide::A;
constexpr MeasureSide AB = MeasureSide::AB;

// Dense Bloch-grid minima (step 1e-3) of the brute-force two-qubit oracle,
// frozen. Regenerate with oracle::TwoQubit(...).discord_min(1e-3) etc.
struct Frozen {
    double discord, deficit, lqu;
};
constexpr Frozen family_0302{0.034170112550135, 0.034491168024242, 0.023983405673075};
constexpr Frozen werner_half{0.125814583693912, 0.125814583693912, 0.089316397477041};
constexpr Frozen bell_4321{0.034851554559677, 0.034851554559677, 0.024336964497831};

const double tol_opt = OptConfig{}.tol_opt;

void check_against(const BipartiteState& s, const Frozen& f) {
    double d = discord(s, A).value, e = deficit(s, A).value, l = lqu(s).value;
    // The optimizer must not lose to the grid by more than the grid's own error.
    CHECK(d == doctest::Approx(f.discord).epsilon(1e-6));
    CHECK(d <= f.discord + 1e-9);
    CHECK(e == doctest::Approx(f.deficit).epsilon(1e-6));
    CHECK(e <= f.deficit + 1e-9);
    CHECK(l == doctest::Approx(f.lqu).epsilon(1e-6));
}

double s_of(const CMatrix& m) { return von_neumann_entropy(m); }

} // namespace

TEST_CASE("frozen oracle values") {
    check_against(family_xy({0.3, 0.2}), family_0302);
    check_against(werner(2, 0.5), werner_half);
    check_against(bell_diagonal({0.4, 0.3, 0.2, 0.1}), bell_4321);
}

TEST_CASE("the frozen values reproduce") {
    // Cheap re-derivation at a coarser grid guards against editing mistakes.
    oracle::TwoQubit o{oracle::M4(family_xy({0.3, 0.2}).matrix())};
    CHECK(o.discord_min(2e-2).value == doctest::Approx(family_0302.discord).epsilon(1e-3));
    CHECK(o.lqu_closed() == doctest::Approx(family_0302.lqu).epsilon(1e-12));
}

TEST_CASE("LQU matches its closed form on random two-qubit states") {
    gen::for_cases(20, 71, [](gen::Case& c) {
        BipartiteState s = c.mixed_qubits();
        oracle::TwoQubit o{oracle::M4(s.matrix())};
        CHECK(lqu(s).value == doctest::Approx(o.lqu_closed()).epsilon(1e-7));
    });
}

TEST_CASE("Bell state panel") {
    BipartiteState phi = max_entangled(2);
    const double r = std::sqrt(0.5);
    CHECK(mig(phi, DistanceId::S2, A).value == doctest::Approx(0.5));
    CHECK(mig(phi, DistanceId::Hellinger, A).value == doctest::Approx(2 * (1 - r)));
    CHECK(geometric(phi, DistanceId::S1, A).value == doctest::Approx(1));
    CHECK(geometric(phi, DistanceId::S2, A).value == doctest::Approx(0.5));
    // 2 (1 - sqrt(s_max)) with s_max = 1/2.
    CHECK(geometric(phi, DistanceId::Bures, A).value == doctest::Approx(2 * (1 - r)).epsilon(1e-6));
    CHECK(discord(phi, A).value == doctest::Approx(1));
    CHECK(classical_correlations(phi, A).value == doctest::Approx(1));
    CHECK(deficit(phi, A).value == doctest::Approx(1));
    CHECK(negativity_of_quantumness(phi, A, NoQRoute::activation).value == doctest::Approx(1).epsilon(1e-6));
    CHECK(negativity_of_quantumness(phi, A, NoQRoute::l1).value == doctest::Approx(1).epsilon(1e-6));
    CHECK(unitary_response(phi, DistanceId::S2).value == doctest::Approx(2));
    CHECK(unitary_response(phi, DistanceId::S1).value == doctest::Approx(2));
    CHECK(discriminating_strength(phi).value == doctest::Approx(1));
    CHECK(lqu(phi).value == doctest::Approx(1).epsilon(1e-6));
    CHECK(interferometric_power(phi).value == doctest::Approx(1).epsilon(1e-6));
    CHECK_THROWS_AS(fixed_basis_informational(phi, FixedBasisMode::MID), DegenerateMarginal);
    CHECK_THROWS_AS(fixed_basis_informational(phi, FixedBasisMode::diagonal_discord), DegenerateMarginal);
}

TEST_CASE("classical states give zero") {
    for (double x : {0.0, 0.3, 0.7, 1.0}) {
        CAPTURE(x);
        BipartiteState s = family_xy({x, 0});
        for (DistanceId id : {DistanceId::RE, DistanceId::S1, DistanceId::S2, DistanceId::Bures, DistanceId::Hellinger})
            CHECK(std::abs(mig(s, id, A).value) < 1e-8);
        CHECK(std::abs(geometric(s, DistanceId::Bures, A).value) < 1e-8);
        CHECK(std::abs(discord(s, A).value) < 1e-8);
        CHECK(std::abs(unitary_response(s, DistanceId::Hellinger).value) < 1e-8);
        CHECK(std::abs(lqu(s).value) < 1e-8);
        CHECK(std::abs(interferometric_power(s).value) < 1e-8);
        CHECK(std::abs(discriminating_strength(s).value) < 1e-8);
    }
    CHECK(classical_correlations(family_xy({0, 0}), A).value == doctest::Approx(1));

    gen::for_cases(5, 72, [](gen::Case& c) {
        RMatrix joint = RMatrix::Random(2, 2).cwiseAbs();
        joint /= joint.sum();
        LocalBasis ba = c.qubit_basis(), bb = c.qubit_basis();
        BipartiteState cc = classical_classical(joint, ba, bb);
        OptConfig cfg;
        cfg.seed_pairs = {BasisPair{ba, bb}};
        CHECK(std::abs(negativity_of_quantumness(cc, AB, NoQRoute::activation, cfg).value) < 1e-8);
        CHECK(std::abs(discord(cc, AB, MeasurementClass::LPM, cfg).value) < 1e-8);
        CHECK(std::abs(deficit(cc, AB, MeasurementClass::LPM, cfg).value) < 1e-8);
    });
}

TEST_CASE("pure-state reductions") {
    gen::for_cases(10, 73, [](gen::Case& c) {
        BipartiteState psi = random_pure_bipartite(2, 2, c.seed());
        CMatrix ra = psi.marginal_a();
        double sa = s_of(ra), pur = (ra * ra).trace().real();
        double smax = herm_eigenvalues(ra).maxCoeff();
        double t32 = mat_func(ra, SpectralFn::pow(1.5)).trace().real();
        CHECK(discord(psi, A).value == doctest::Approx(sa).epsilon(1e-6));
        CHECK(deficit(psi, A).value == doctest::Approx(sa).epsilon(1e-6));
        CHECK(geometric(psi, DistanceId::S2, A).value == doctest::Approx(1 - pur).epsilon(1e-6));
        CHECK(geometric(psi, DistanceId::Bures, A).value == doctest::Approx(2 * (1 - std::sqrt(smax))).epsilon(1e-6));
        CHECK(geometric(psi, DistanceId::Hellinger, A).value == doctest::Approx(2 * (1 - std::sqrt(pur))).epsilon(1e-6));
        CHECK(mig(psi, DistanceId::Bures, A).value == doctest::Approx(2 * (1 - std::sqrt(pur))).epsilon(1e-6));
        CHECK(mig(psi, DistanceId::Hellinger, A).value == doctest::Approx(2 * (1 - t32)).epsilon(1e-6));
        CHECK(geometric(psi, DistanceId::S1, A).value == doctest::Approx(negativity(psi)).epsilon(1e-6));
        CHECK(lqu(psi).value == doctest::Approx(interferometric_power(psi).value).epsilon(1e-6));
    });
}

TEST_CASE("two-sided Bures measure") {
    // Pure states: the sqrt(rho)|ab> are all parallel, so the best guess keeps
    // the largest Schmidt weight, as on one side.
    gen::for_cases(3, 74, [](gen::Case& c) {
        BipartiteState psi = random_pure_bipartite(2, 2, c.seed());
        double smax = herm_eigenvalues(psi.marginal_a()).maxCoeff();
        CHECK(geometric(psi, DistanceId::Bures, AB).value == doctest::Approx(2 * (1 - std::sqrt(smax))).epsilon(1e-6));
    });
    // CC states are CQ states; the two-sided minimum is over a smaller set.
    gen::for_cases(4, 75, [](gen::Case& c) {
        BipartiteState s = c.bipartite(2, 2);
        double one = geometric(s, DistanceId::Bures, A).value;
        double two = geometric(s, DistanceId::Bures, AB).value;
        CHECK(two >= one - 1e-9);
        CHECK(two <= 2.0);
    });
    RMatrix joint(2, 2);
    joint << 0.1, 0.2, 0.3, 0.4;
    OptConfig cfg;
    LocalBasis ba = LocalBasis::qubit(0.7, 1.1), bb = LocalBasis::qubit(2.0, -0.4);
    cfg.seed_pairs = {BasisPair{ba, bb}};
    CHECK(std::abs(geometric(classical_classical(joint, ba, bb), DistanceId::Bures, AB, cfg).value) < 1e-8);
}

TEST_CASE("route cross-checks") {
    BipartiteState s = family_xy({0.3, 0.2});
    double act = negativity_of_quantumness(s, A, NoQRoute::activation).value;
    double l1 = negativity_of_quantumness(s, A, NoQRoute::l1).value;
    CHECK(std::abs(act - l1) <= 2 * tol_opt);

    double l = lqu(s).value;
    CHECK(std::abs(discriminating_strength(s).value - l) <= 3 * tol_opt);
    CHECK(interferometric_power(s).value >= l - 3 * tol_opt);
    double he = unitary_response(s, DistanceId::Hellinger).value;
    double he_closed = unitary_response(s, DistanceId::Hellinger, {}, ResponseRoute::closed).value;
    CHECK(he == doctest::Approx(he_closed).epsilon(1e-6));
    CHECK(std::abs(he - 2 * l) <= 3 * tol_opt);

    CHECK(std::abs(deficit(s, A).value - geometric(s, DistanceId::RE, A).value) <= 2 * tol_opt);
    CHECK(fixed_basis_informational(s, FixedBasisMode::MID).value >= discord(s, AB).value - 1e-9);
    CHECK(fixed_basis_informational(s, FixedBasisMode::AMID).value == doctest::Approx(discord(s, AB).value));

    // Quadratic link between Hellinger measures on the same state.
    double g = geometric(s, DistanceId::Hellinger, A).value;
    CHECK(he == doctest::Approx(4 * g - g * g).epsilon(1e-6));

    CHECK_THROWS_AS(unitary_response(s, DistanceId::RE), Unsupported);
    CHECK_THROWS_AS(unitary_response(werner(3, 0.2), DistanceId::Hellinger, {}, ResponseRoute::closed), Unsupported);
    CHECK_THROWS_AS(geometric(s, DistanceId::S1, AB), Unsupported);
    CHECK_THROWS_AS(mig(s, DistanceId::L1, A), Unsupported);
}

TEST_CASE("Hilbert-Schmidt measure picks up the ancilla purity") {
    gen::for_cases(5, 74, [](gen::Case& c) {
        BipartiteState s = c.mixed_qubits();
        DensityMatrix rc = c.density(2);
        double q = geometric(s, DistanceId::S2, A).value;
        double qa = geometric(append_to_b(s, rc), DistanceId::S2, A).value;
        CHECK(qa == doctest::Approx(q * rc.purity()).epsilon(1e-6));
    });
}

TEST_CASE("diagonal discord vanishes in the marginal eigenbasis") {
    LocalBasis b = LocalBasis::qubit(0.4, 1.1);
    std::array<double, 2> p{0.3, 0.7};
    CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    k1(1, 1) = 1;
    std::vector<DensityMatrix> cond{DensityMatrix(k0), DensityMatrix(k1)};
    BipartiteState s = classical_quantum(p, b, cond);
    CHECK(std::abs(fixed_basis_informational(s, FixedBasisMode::diagonal_discord).value) < 1e-10);
    CHECK(std::abs(fixed_basis_informational(s, FixedBasisMode::thermal_diagonal).value) < 1e-10);
}

TEST_CASE("inequality wheel arrows hold") {
    gen::for_cases(3, 75, [](gen::Case& c) {
        BipartiteState s = c.mixed_qubits();
        WheelValues w = inequality_wheel(s);
        for (const WheelArrow& a : wheel_arrows(w)) {
            CAPTURE(a.smaller);
            CAPTURE(a.larger);
            CHECK(a.lhs <= a.rhs + 1e-9);
        }
    });
}

TEST_CASE("qutrit measures stay finite and ordered") {
    gen::for_cases(3, 76, [](gen::Case& c) {
        BipartiteState s = random_bipartite(3, 2, 3, c.seed());
        double l = lqu(s).value, ip = interferometric_power(s).value;
        CHECK(l >= -1e-9);
        CHECK(l <= ip + 3 * tol_opt);
        CHECK(discord(s, A).value >= -1e-9);
        CHECK(std::isfinite(mig(s, DistanceId::Bures, A).value));
    });
}

TEST_CASE("report fields") {
    MeasureReport r = discord(family_xy({0.3, 0.2}), A);
    CHECK(r.measure_id == "discord");
    CHECK(r.argmin.size() == 1);
    CHECK(unitarity_defect(r.argmin[0]) < 1e-10);
    CHECK(r.bound == Bound::upper);
    CHECK(default_spectrum(2) == std::vector<double>{1, -1});
    CHECK(default_spectrum(3) == std::vector<double>{0, 1, 2});
}
