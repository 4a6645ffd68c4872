#pragma once

#include <cstdint>
#include <random>

#include "qcorr/linalg.hpp"

namespace qcorr {

using Rng = std::mt19937_64;

// splitmix64 finalizer; mixes (seed, stream) so per-item generators are
// independent of scheduling order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) { return Rng(mix_seed(seed, stream)); }

// Complex Gaussian entries with E|z|^2 = 1.
inline CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            double re = n(rng);
            double im = n(rng);
            g(i, j) = cplx(re, im);
        }
    return g;
}

// Haar isometry (rows >= cols) via QR of a Ginibre matrix with the phase of
// R's diagonal absorbed into Q.
inline CMatrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    CMatrix g = ginibre(rows, cols, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
    CMatrix r = qr.matrixQR();
    for (Eigen::Index k = 0; k < cols; ++k) {
        double a = std::abs(r(k, k));
        if (a > 0) q.col(k) *= r(k, k) / a;
    }
    return q;
}

inline CMatrix haar_unitary(int d, Rng& rng) { return haar_isometry(d, d, rng); }

inline CMatrix random_hermitian(int d, Rng& rng) {
    CMatrix g = ginibre(d, d, rng);
    return (g + g.adjoint()) / 2.0;
}

} // namespace qcorr
