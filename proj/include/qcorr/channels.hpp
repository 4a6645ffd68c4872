#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcorr/basis.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

class KrausChannel {
public:
    explicit KrausChannel(std::vector<CMatrix> ops);

    const std::vector<CMatrix>& ops() const { return ops_; }
    int d_in() const { return static_cast<int>(ops_.front().cols()); }
    int d_out() const { return static_cast<int>(ops_.front().rows()); }
    CMatrix apply(const CMatrix& rho) const;

private:
    std::vector<CMatrix> ops_;
};

class POVM {
public:
    explicit POVM(std::vector<CMatrix> elements);
    // Rank-one POVM {|v_k><v_k|} from the columns of a d x N matrix V with
    // V V^dagger = I.
    static POVM from_isometry_rows(const CMatrix& v);

    const std::vector<CMatrix>& elements() const { return elements_; }
    int dim() const { return static_cast<int>(elements_.front().rows()); }

private:
    std::vector<CMatrix> elements_;
};

enum class Party { A, B };

// U on the given party, identity on the other one.
CMatrix embed_local(const CMatrix& u, Party party, int d_a, int d_b);

BipartiteState apply_local_unitary(const BipartiteState& s, const CMatrix& u, Party party);
BipartiteState lpm_apply(const BipartiteState& s, const LocalBasis& basis_a,
                         const std::optional<LocalBasis>& basis_b = std::nullopt);
// System-plus-apparatus state in the tensor order A, B, A' (, B'), declared
// with split AB : A'(B'). The isometry sends |a_i>|0> to |a_i>|i>, i.e. a basis
// change on A followed by a generalized CNOT onto the ancilla.
BipartiteState premeasurement_state(const BipartiteState& s, const LocalBasis& basis_a,
                                    const std::optional<LocalBasis>& basis_b = std::nullopt);
BipartiteState apply_kraus(const BipartiteState& s, const KrausChannel& ch, Party party);

KrausChannel random_cptp(int d, int kraus_count, std::uint64_t seed);
KrausChannel dephasing(const LocalBasis& basis);

// sum_k e^{2 pi i k/d} |b_k><b_k|
CMatrix harmonic_unitary(const LocalBasis& basis);
// sum_k phases_k |b_k><b_k|
CMatrix phase_unitary(const LocalBasis& basis, std::span<const cplx> phases);
// sum_k spectrum_k |b_k><b_k|; throws DegenerateSpectrum.
CMatrix local_observable(const LocalBasis& basis, std::span<const double> spectrum);

void check_nondegenerate(std::span<const double> spectrum);

} // namespace qcorr
