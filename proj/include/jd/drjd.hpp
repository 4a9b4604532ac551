#pragma once

#include <cstdint>
#include <vector>

#include "jd/family.hpp"
#include "jd/rjd.hpp"

namespace jd {

enum class JdAlgo { kRjd, kDrjd };

/// Per-level record of one deflation step.
struct DeflationLevel {
    int dimension = 0;      // subproblem size entering this level
    double threshold = 0.0; // t = 2 * min_i t_i
    int accepted = 0;       // columns kept at this level (>= 1)
    int trial_index = 0;    // winning trial i* (max accepted columns)
};

struct DeflationTrace {
    std::vector<DeflationLevel> levels;

    int depth() const { return static_cast<int>(levels.size()); }
};

struct DrjdResult {
    OrthogonalMatrix q;
    DeflationTrace trace;
};

/// Per-column joint residuals of a candidate diagonalizer:
/// entry j = sum_k ||offdiag(Q^T A_k Q)(:,j)||_2^2. For orthogonal q these
/// match the eigenpair residuals ||(A_k - (q_j^T A_k q_j) I) q_j||_2^2
/// summed over k, which is what the deflation threshold screens.
std::vector<double> column_residuals(const SymmetricFamily& family,
                                     const OrthogonalMatrix& q);

/// Deflation-based randomized joint diagonalization. Each level runs L
/// single-trial diagonalizations, accepts the columns whose residual stays
/// within twice the best column residual seen across trials, and recurses
/// on the orthogonal complement of the accepted columns. Every level
/// accepts at least one column, so the recursion depth is at most n.
/// Level seeds derive from (seed, level index); the caller's L is reused at
/// every level. Deterministic given (family, trials, seed).
DrjdResult drjd(const SymmetricFamily& family, int trials,
                std::uint64_t seed);

}  // namespace jd
