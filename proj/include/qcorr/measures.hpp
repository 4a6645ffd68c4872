#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcorr/metrics.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class MeasureSide { A, AB };
enum class MeasurementClass { LPM, LGM };
enum class GeometricMode { exact, best_effort };
enum class FixedBasisMode { MID, AMID, diagonal_discord, thermal_diagonal };
enum class NoQRoute { activation, l1 };
enum class ResponseRoute { direct, closed };

const char* to_string(MeasureSide s);

struct MeasureReport {
    std::string measure_id;
    MeasureSide side = MeasureSide::A;
    double value = 0;
    // Unitaries of the optimal local bases (or POVM dilations for LGM):
    // one entry per measured party.
    std::vector<CMatrix> argmin;
    std::string route;
    Bound bound = Bound::upper;
    OptConfig cfg;
    std::map<std::string, double> metadata;
};

MeasureReport mig(const BipartiteState& s, DistanceId id, MeasureSide side, const OptConfig& cfg = {});
MeasureReport geometric(const BipartiteState& s, DistanceId id, MeasureSide side, const OptConfig& cfg = {},
                        GeometricMode mode = GeometricMode::exact);
MeasureReport discord(const BipartiteState& s, MeasureSide side, MeasurementClass mclass = MeasurementClass::LPM,
                      const OptConfig& cfg = {});
MeasureReport classical_correlations(const BipartiteState& s, MeasureSide side,
                                     MeasurementClass mclass = MeasurementClass::LPM, const OptConfig& cfg = {});
MeasureReport deficit(const BipartiteState& s, MeasureSide side, MeasurementClass mclass = MeasurementClass::LPM,
                      const OptConfig& cfg = {});
MeasureReport fixed_basis_informational(const BipartiteState& s, FixedBasisMode mode, const OptConfig& cfg = {});
MeasureReport negativity_of_quantumness(const BipartiteState& s, MeasureSide side, NoQRoute route,
                                        const OptConfig& cfg = {});
// One-sided (A). The closed route exists for Hellinger with a qubit A only.
MeasureReport unitary_response(const BipartiteState& s, DistanceId id, const OptConfig& cfg = {},
                               ResponseRoute route = ResponseRoute::direct);
// phases: eigenvalues of the local unitary (default: d-th roots of unity).
MeasureReport discriminating_strength(const BipartiteState& s, std::span<const cplx> phases = {},
                                      const OptConfig& cfg = {});
MeasureReport lqu(const BipartiteState& s, std::span<const double> spectrum = {}, const OptConfig& cfg = {});
MeasureReport interferometric_power(const BipartiteState& s, std::span<const double> spectrum = {},
                                    const OptConfig& cfg = {});

// {+1, -1} for qubits, {0, ..., d-1} otherwise.
std::vector<double> default_spectrum(int d);

// Per-measurement informational losses, shared by discord, deficit and the
// wheel. v_a (v_b) are d x N matrices with orthonormal rows whose columns
// define rank-one POVMs; a basis unitary is the projective special case.
struct InfoLoss {
    double mutual_info; // I(rho) - I(post-measurement)
    double entropy;     // S(post-measurement register state) - S(rho)
};
InfoLoss info_loss(const BipartiteState& s, const CMatrix& v_a, const CMatrix* v_b = nullptr);

// The eight quantities of the inequality wheel: {LPM, LGM} x {A, AB} x
// {mutual information, entropy}, computed with the seeding that makes every
// arrow hold between the computed upper bounds.
struct WheelValues {
    double lpm_i_a, lpm_s_a, lpm_i_ab, lpm_s_ab;
    double lgm_i_a, lgm_s_a, lgm_i_ab, lgm_s_ab;
};
struct WheelArrow {
    const char* smaller;
    const char* larger;
    double lhs;
    double rhs;
};
WheelValues inequality_wheel(const BipartiteState& s, const OptConfig& cfg = {});
std::vector<WheelArrow> wheel_arrows(const WheelValues& w);

} // namespace qcorr
