#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcorr/basis.hpp"

namespace qcorr {

struct BasisPair {
    LocalBasis a;
    LocalBasis b;
};

struct OptConfig {
    int grid_points = 24;   // qubit chart: theta in steps of pi/N, phi in steps of pi/N
    int multistarts = 16;   // random starts for d > 2 and for POVM searches
    int refine_iters = 200; // simplex steps per refinement round
    double tol_opt = 1e-7;  // a round improving by less than this ends refinement
    std::uint64_t seed = 0;
    std::vector<LocalBasis> seed_bases; // warm starts (side A for two-sided searches)
    std::vector<BasisPair> seed_pairs;  // warm starts for two-sided searches
};

// Throws DomainError unless all counts are >= 1 and tol_opt > 0.
void validate_config(const OptConfig& cfg);

enum class Bound { upper, exact };

struct OptResult {
    double value = 0;
    std::vector<CMatrix> arg; // one unitary per optimized factor
    long evaluations = 0;
    Bound bound = Bound::upper;

    LocalBasis basis(std::size_t k = 0) const { return LocalBasis(arg.at(k)); }
};

using BasisObjective = std::function<double(const LocalBasis&)>;
using PairObjective = std::function<double(const LocalBasis&, const LocalBasis&)>;
// v is d x n with orthonormal rows; its columns define a rank-one POVM.
using IsometryObjective = std::function<double(const CMatrix& v)>;
using IsometryPairObjective = std::function<double(const CMatrix& va, const CMatrix& vb)>;

OptResult min_over_bases(int d, const BasisObjective& f, const OptConfig& cfg);
OptResult min_over_basis_pairs(int d_a, int d_b, const PairObjective& f, const OptConfig& cfg,
                               std::span<const BasisPair> seed_pairs = {});

// Searches n x n unitaries W (exp(iH) chart) and passes the top d rows to f.
// Seeds are n x n unitaries; the result arg holds W.
OptResult min_over_isometries(int d, int n, const IsometryObjective& f, const OptConfig& cfg,
                              std::span<const CMatrix> seeds);
OptResult min_over_isometry_pairs(int d_a, int n_a, int d_b, int n_b, const IsometryPairObjective& f,
                                  const OptConfig& cfg, std::span<const std::pair<CMatrix, CMatrix>> seeds);

// Unitary n x n whose top d rows are [B, 0]: embeds a projective measurement
// in an n-outcome rank-one POVM.
CMatrix embed_basis_in_isometry(const CMatrix& basis_unitary, int n);

struct ScalarMin {
    double arg;
    double value;
};
ScalarMin min_scalar(const std::function<double(double)>& f, double a, double b, bool unimodal);

struct NelderMeadResult {
    RVector x;
    double value;
    long evaluations;
};
// Restarted Nelder-Mead: rounds of at most max_iters steps, repeated while a
// round improves the best value by more than tol.
NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0, double step,
                             int max_iters, double tol);

} // namespace qcorr
