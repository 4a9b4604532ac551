#pragma once

#include <optional>

#include "jd/family.hpp"
#include "jd/matrix.hpp"

namespace jd {

/// Off-diagonality scores of a candidate diagonalizer.
struct JointDiagScore {
    double least_squares = 0.0;
    // Defined only when every conjugated matrix is positive definite.
    std::optional<double> pham;
};

/// Copy of a with the diagonal set to zero.
Matrix offdiag(const Matrix& a);

/// sum_k ||offdiag(Q^T A_k Q)||_F^2, the least-squares off-diagonality
/// measure minimized by joint diagonalization.
double least_squares_measure(const SymmetricFamily& family,
                             const OrthogonalMatrix& q);

/// Log-det (Kullback-Leibler) off-diagonality measure
/// 1/(2n) * sum_k [log det diag(Q^T A_k Q) - log det(Q^T A_k Q)].
/// Requires every conjugated matrix to be positive definite; throws
/// NumericalError naming the first offending matrix otherwise.
double pham_measure(const SymmetricFamily& family, const OrthogonalMatrix& q);

JointDiagScore score_joint_diag(const SymmetricFamily& family,
                                const OrthogonalMatrix& q);

/// Moreau-Amari separation index of a gain matrix M = B*A, in [0, 1];
/// zero exactly when M is a scaled permutation. Permutation- and
/// scale-invariant. Requires n >= 2 and no all-zero row or column.
double moreau_amari(const Matrix& m);

}  // namespace jd
