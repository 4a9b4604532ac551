#pragma once

#include <vector>

#include "jd/family.hpp"
#include "jd/matrix.hpp"

namespace jd {

/// Full spectral factorization A = Q diag(lambda) Q^T with eigenvalues in
/// ascending order and the matching eigenvector columns in q.
struct EigenDecomposition {
    OrthogonalMatrix q;
    std::vector<double> lambda;
};

inline constexpr int kMaxJacobiSweeps = 100;

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi rotation
/// method. Deterministic: identical input bits give identical output bits.
/// Eigenvector columns are sign-fixed so their largest-magnitude entry is
/// positive (ties broken by the first such entry).
///
/// Throws InvalidArgument if a deviates from symmetry by more than 1e-10
/// relative, NumericalError if the sweep cap is hit.
EigenDecomposition symmetric_eig(const Matrix& a);

}  // namespace jd
