#pragma once

#include <vector>

#include "jd/matrix.hpp"

namespace jd::kernels {

// Dense kernels behind the library's hot paths. Each kernel is OpenMP
// parallel with a fixed per-element accumulation order, so its output is
// bit-identical to the serial reference in kernels::ref regardless of the
// thread count. The ref versions are kept as plain naive loops for testing
// and for the kernel benchmark.

/// C = A * B.
Matrix matmul(const Matrix& a, const Matrix& b);

/// C = A^T * B.
Matrix matmul_tn(const Matrix& a, const Matrix& b);

/// Q^T * A * Q.
Matrix congruence(const Matrix& q, const Matrix& a);

/// sum_k mu[k] * A_k, computed on the upper triangle and mirrored, so the
/// result is symmetric exactly whenever each A_k is.
Matrix lincomb_symmetric(const std::vector<Matrix>& as,
                         const std::vector<double>& mu);

/// Per-column joint residuals: entry j = sum_k ||offdiag(Q^T A_k Q)(:,j)||_2^2.
std::vector<double> family_column_residuals(const std::vector<Matrix>& as,
                                            const Matrix& q);

/// sum_k ||diag(Q^T A_k Q)||_F^2 without forming the full conjugations.
double diag_congruence_sumsq(const std::vector<Matrix>& as, const Matrix& q);

// Sample-moment accumulators for the cumulant pipeline. Samples are summed
// in fixed chunks of kMomentChunk rows and the chunk sums are combined in
// chunk order; that order is the contract, threads only split the chunks.
inline constexpr int kMomentChunk = 2048;

/// Sums x_i x_j over samples (rows of x): returns n*n row-major, no 1/T.
std::vector<double> moment2_sums(const Matrix& x);

/// Sums x_i x_j x_k x_l over samples: returns n^4 row-major, no 1/T.
std::vector<double> moment4_sums(const Matrix& x);

namespace ref {

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix congruence(const Matrix& q, const Matrix& a);
Matrix lincomb_symmetric(const std::vector<Matrix>& as,
                         const std::vector<double>& mu);
std::vector<double> family_column_residuals(const std::vector<Matrix>& as,
                                            const Matrix& q);
double diag_congruence_sumsq(const std::vector<Matrix>& as, const Matrix& q);
std::vector<double> moment2_sums(const Matrix& x);
std::vector<double> moment4_sums(const Matrix& x);

}  // namespace ref

}  // namespace jd::kernels
