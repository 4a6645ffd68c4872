#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// ---- file formats ---------------------------------------------------------

// {"d_a": int, "d_b": int, "matrix": [[{"re": x, "im": y}, ...], ...]}
BipartiteState parse_state_json(const std::string& text);
BipartiteState load_state(const std::string& path);
std::string state_to_json(const BipartiteState& s);
void save_state(const BipartiteState& s, const std::string& path);

// One JSON object, no trailing newline.
std::string report_to_json(const MeasureReport& r);

// ---- parallelism ------------------------------------------------------------

// QCORR_THREADS if set and positive, otherwise the hardware concurrency.
int thread_count();
// Calls f(i) for i in [0, n) on up to thread_count() threads. Work items must
// be independent; results land in caller-owned slots so order never depends
// on the schedule. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

// ---- region map -------------------------------------------------------------

enum class RegionClass { classical_cc, classical_cq_only, classical_qc_only, product, discordant_separable, entangled };
const char* to_string(RegionClass c);

struct RegionPoint {
    double x, y;
    RegionClass cls;
    double negativity;
    double discord_a;
    bool polynomial_entangled;
};

std::vector<RegionPoint> region_map(double step, const OptConfig& cfg = {});
void write_region_csv(const std::vector<RegionPoint>& pts, std::ostream& out);

// Grid points of the xy family: x = i*step, y = j*step, x + y <= 1.
std::vector<FamilyPointXY> family_grid(double step);

// ---- suites -----------------------------------------------------------------

enum class SuiteId { identities, requirements, wheel, distance_inequalities, regressions };
SuiteId parse_suite(const std::string& name);
const char* to_string(SuiteId s);

// Random states for identities and wheel (200), state pairs for the distance
// block (500), states for the local-unitary and channel checks of the
// requirement suite (20). Regressions ignore it.
int default_corpus_size(SuiteId s);

struct SuiteConfig {
    int corpus_size = 200;
    std::uint64_t seed = 1;
    double tol_id = 1e-3;     // doubly optimized identities
    double tol_closed = 1e-6; // closed routes
    double tol_wheel = 1e-9;
    double tol_distance = 1e-9;
    OptConfig opt;
};

struct SuiteFailure {
    std::string state;    // fingerprint
    std::string measure;
    std::string relation; // expected relation
    std::vector<double> observed;
};

struct SuiteReport {
    std::string suite;
    long cases = 0;
    std::vector<SuiteFailure> failures;
    // Expected violations (regressions that must reproduce), not failures.
    std::vector<SuiteFailure> expected;
    double wall_seconds = 0;
};

SuiteReport run_suite(SuiteId suite, const SuiteConfig& cfg);
std::string suite_report_to_json(const SuiteReport& r);

// Short stable hash of the matrix entries.
std::string fingerprint(const BipartiteState& s);

// ---- measure registry used by the CLI and scans ----------------------------

struct MeasureRequest {
    std::string id;
    MeasureSide side = MeasureSide::A;
    std::string route; // empty: default route
    OptConfig cfg;
};
// Throws Unsupported for unknown ids/routes or unsupported (measure, dims).
std::vector<MeasureReport> compute_measure(const BipartiteState& s, const MeasureRequest& req);
std::vector<std::string> measure_ids();

// ---- CLI ----------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qcorr
