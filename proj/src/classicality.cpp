#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

ClassicalityDecision classical_quantum_test(const BipartiteState& s, double tol, const OptConfig& cfg) {
    MeasureReport r = mig(s, DistanceId::S1, MeasureSide::A, cfg);
    ClassicalityDecision d;
    d.min_distance = r.value;
    d.classical = r.value <= tol;
    for (const auto& u : r.argmin) d.certificate.emplace_back(u);
    return d;
}

ClassicalityDecision classical_classical_test(const BipartiteState& s, double tol, const OptConfig& cfg) {
    // Seed the product search with the best one-sided bases of both parties.
    ClassicalityDecision a = classical_quantum_test(s, tol, cfg);
    OptConfig c = cfg;
    c.seed_bases.push_back(a.certificate.front());
    MeasureReport r = mig(s, DistanceId::S1, MeasureSide::AB, c);
    ClassicalityDecision d;
    d.min_distance = r.value;
    d.classical = r.value <= tol;
    for (const auto& u : r.argmin) d.certificate.emplace_back(u);
    return d;
}

bool is_classical_quantum(const BipartiteState& s, double tol) { return classical_quantum_test(s, tol, {}).classical; }

bool is_classical_classical(const BipartiteState& s, double tol) {
    return classical_classical_test(s, tol, {}).classical;
}

} // namespace qcorr
