#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class DistanceId { RE, S1, S2, Bures, Hellinger, L1, ChernoffComplement };

const char* to_string(DistanceId id);

// A real number or +infinity; only relative entropy produces the latter.
struct ExtendedReal {
    double value = 0;
    static ExtendedReal infinity() { return {std::numeric_limits<double>::infinity()}; }
    bool is_infinite() const { return std::isinf(value); }
};

double shannon_entropy(std::span<const double> p);
double shannon_entropy(const RVector& p);
// Entropies in bits; the argument is assumed to be a state.
double von_neumann_entropy(const CMatrix& rho);
inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }
double mutual_information(const BipartiteState& s);

// The density-matrix arguments of the functions below are raw matrices so the
// measure kernels can pass transformed states without revalidation.
ExtendedReal relative_entropy(const CMatrix& rho, const CMatrix& sigma);
double fidelity(const CMatrix& rho, const CMatrix& sigma);

struct ChernoffResult {
    double value;
    double s;
};
ChernoffResult chernoff(const CMatrix& rho, const CMatrix& sigma);
inline double chernoff_C(const CMatrix& rho, const CMatrix& sigma) { return chernoff(rho, sigma).value; }

// L1 throws here (it needs a basis, see distance_l1).
ExtendedReal distance(DistanceId id, const CMatrix& rho, const CMatrix& sigma);
inline ExtendedReal distance(DistanceId id, const DensityMatrix& rho, const DensityMatrix& sigma) {
    return distance(id, rho.matrix(), sigma.matrix());
}
// Entrywise l1 norm of rho - sigma in the basis given by the columns of w.
double distance_l1(const CMatrix& rho, const CMatrix& sigma, const CMatrix& w);

double skew_information(const CMatrix& rho, const CMatrix& k);
double quantum_fisher_information(const CMatrix& rho, const CMatrix& k);

} // namespace qcorr
