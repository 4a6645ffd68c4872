#include "qcorr/entanglement.hpp"

#include "qcorr/metrics.hpp"

namespace qcorr {

double negativity(const BipartiteState& s) {
    return hermitian_trace_norm(partial_transpose(s.matrix(), s.d_a(), s.d_b(), Side::A)) - 1.0;
}

bool is_ppt(const BipartiteState& s) {
    return herm_eigenvalues(partial_transpose(s.matrix(), s.d_a(), s.d_b(), Side::A)).minCoeff() >= -1e-9;
}

double entanglement_entropy(const BipartiteState& s) {
    if (s.rho().purity() < 1 - 1e-9) throw NotPure("entanglement_entropy: state is not pure");
    return von_neumann_entropy(s.marginal_a());
}

double xy_polynomial(FamilyPointXY p) {
    double x = p.x, y = p.y;
    if (!(x >= 0) || !(y >= 0) || x + y > 1 + 1e-12) throw DomainError("xy_polynomial: point outside the family");
    return 1 + 10 * x * y - 16 * x * x * y * y * (4 * x + 1) * (4 * y + 1) - 7 * (x * x + y * y) +
           2 * (x + y) * (1 + 2 * (x * x - 4 * x * y + y * y));
}

bool xy_is_entangled(FamilyPointXY p) { return xy_polynomial(p) < 0; }

} // namespace qcorr
