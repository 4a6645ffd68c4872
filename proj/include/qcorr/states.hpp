#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcorr/basis.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

inline constexpr double tol_state = 1e-9;

// Names the first violated density-matrix invariant ("square", "hermitian",
// "trace", "psd"), or nullopt when m is a valid state.
std::optional<std::string> density_violation(const CMatrix& m, double tol = tol_state);

class DensityMatrix {
public:
    // Validates and stores the Hermitian part. Throws InvalidState.
    explicit DensityMatrix(const CMatrix& m);
    // For matrices that are states by construction (no checks, no copy of the
    // Hermitian part).
    static DensityMatrix trusted(CMatrix m);

    const CMatrix& matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    double purity() const { return mat_.squaredNorm(); }

private:
    DensityMatrix() = default;
    CMatrix mat_;
};

class BipartiteState {
public:
    BipartiteState(DensityMatrix rho, int d_a, int d_b);

    const DensityMatrix& rho() const { return rho_; }
    const CMatrix& matrix() const { return rho_.matrix(); }
    int d_a() const { return d_a_; }
    int d_b() const { return d_b_; }
    int dim() const { return d_a_ * d_b_; }
    CMatrix marginal_a() const { return partial_trace(matrix(), d_a_, d_b_, Side::B); }
    CMatrix marginal_b() const { return partial_trace(matrix(), d_a_, d_b_, Side::A); }

private:
    DensityMatrix rho_;
    int d_a_;
    int d_b_;
};

struct FamilyPointXY {
    double x;
    double y;
};

BipartiteState family_xy(FamilyPointXY p);
// Weights of (Phi+, Phi-, Psi+, Psi-).
BipartiteState bell_diagonal(const std::array<double, 4>& p);
BipartiteState classical_quantum(std::span<const double> probs, const LocalBasis& basis,
                                 std::span<const DensityMatrix> cond_states);
// joint(i, j) = p_ij on |a_i><a_i| (x) |b_j><b_j|.
BipartiteState classical_classical(const RMatrix& joint, const LocalBasis& basis_a,
                                   const LocalBasis& basis_b);
BipartiteState product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);
BipartiteState max_entangled(int d);
BipartiteState pure_state(const CVector& psi, int d_a, int d_b);
// Werner state on C^d (x) C^d: weight p on the normalized antisymmetric
// projector, 1-p on the normalized symmetric one.
BipartiteState werner(int d, double p);

DensityMatrix random_density(int d, int rank, std::uint64_t seed);
BipartiteState random_bipartite(int d_a, int d_b, int rank, std::uint64_t seed);
BipartiteState random_pure_bipartite(int d_a, int d_b, std::uint64_t seed);

// Exchanges the roles of A and B.
BipartiteState swap_parties(const BipartiteState& s);
// rho_AB (x) rho_C with C appended to the B side.
BipartiteState append_to_b(const BipartiteState& s, const DensityMatrix& rho_c);

struct OptConfig;

// true is certified by the returned basis; false is best effort (the search
// yields an upper bound on the minimum trace distance to the dephased state).
struct ClassicalityDecision {
    bool classical = false;
    double min_distance = 0;
    std::vector<LocalBasis> certificate;
};

ClassicalityDecision classical_quantum_test(const BipartiteState& s, double tol, const OptConfig& cfg);
ClassicalityDecision classical_classical_test(const BipartiteState& s, double tol, const OptConfig& cfg);
bool is_classical_quantum(const BipartiteState& s, double tol);
bool is_classical_classical(const BipartiteState& s, double tol);

} // namespace qcorr
