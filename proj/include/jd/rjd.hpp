#pragma once

#include <cstdint>
#include <vector>

#include "jd/family.hpp"
#include "jd/matrix.hpp"

namespace jd {

/// Default seed for every CLI command and seeded default argument. Fixed
/// (never wall-clock) so default runs are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 42;

/// A standard normal combination vector together with the stream seed that
/// produced it.
struct GaussianVector {
    std::vector<double> mu;
    std::uint64_t seed = 0;
};

/// One randomized trial: the diagonalizer of A(mu) plus its joint
/// off-diagonal error, total and per column.
struct TrialResult {
    OrthogonalMatrix q;
    double total_offdiag_sq = 0.0;
    std::vector<double> column_residual_sq;
    GaussianVector mu;
};

/// Result of rjd(): all L trials in draw order plus the index of the winner.
struct RjdResult {
    int best_index = 0;
    std::vector<TrialResult> trials;

    const TrialResult& best() const { return trials[best_index]; }
};

/// The n-by-d matrix whose row i collects the eigenvalues that common
/// eigenvector i carries across the family. For a jointly diagonalized
/// family, eigenvalues of A(mu) are the inner products <mu, row_i>.
struct EigenvalueVectors {
    Matrix lambda;  // n x d
};

/// Randomized joint diagonalization: L trials, each drawing mu ~ N(0, I_d)
/// from one seeded stream (d values per trial, consumed in trial order),
/// diagonalizing A(mu) and scoring the result on the whole family. The
/// winner minimizes the total off-diagonal error; ties go to the lowest
/// trial index. Deterministic given (family, trials, seed); trials may be
/// computed concurrently, results are reduced in trial order.
RjdResult rjd(const SymmetricFamily& family, int trials, std::uint64_t seed);

/// Trial selection via the diagonal-mass shortcut: returns
/// argmax_i sum_k ||diag(Q_i^T A_k Q_i)||_F^2, which by the norm-splitting
/// identity matches the off-diagonal argmin up to ties at 1e-12 relative
/// (ties resolved to the lowest index).
int select_by_diag(const std::vector<TrialResult>& trials,
                   const SymmetricFamily& family);

/// Rayleigh-quotient estimates of the eigenvalue vectors: row i, column k
/// holds (Q^T A_k Q)_(i,i). Exact when q jointly diagonalizes the family.
EigenvalueVectors eigenvalue_vectors(const SymmetricFamily& family,
                                     const OrthogonalMatrix& q);

}  // namespace jd
