#pragma once

#include <string>
#include <vector>

#include "jd/matrix.hpp"

namespace jd {

// Relative asymmetry up to which an input matrix is silently replaced by
// (A + A^T)/2 on construction. Anything worse is rejected as malformed.
inline constexpr double kAsymmetryAccept = 1e-6;

/// A family of d real symmetric n-by-n matrices, the input object of every
/// joint-diagonalization routine here. Matrices are symmetrized on
/// construction, immutable afterwards, and safe to share across threads.
class SymmetricFamily {
public:
    /// Validates dimensions and symmetry; symmetrizes within tolerance.
    /// Throws InvalidArgument on empty input, dimension mismatch, or
    /// asymmetry beyond kAsymmetryAccept relative to the family scale.
    explicit SymmetricFamily(std::vector<Matrix> matrices);

    int n() const { return n_; }
    int d() const { return static_cast<int>(matrices_.size()); }
    const Matrix& matrix(int k) const { return matrices_[k]; }
    const std::vector<Matrix>& matrices() const { return matrices_; }

    /// sum_k ||A_k||_F^2.
    double total_sq_norm() const;

private:
    int n_;
    std::vector<Matrix> matrices_;
};

/// An n-by-n matrix with constructor-verified orthogonality:
/// ||Q^T Q - I||_F <= 1e-10 * sqrt(n).
class OrthogonalMatrix {
public:
    explicit OrthogonalMatrix(Matrix q);

    int n() const { return q_.rows(); }
    const Matrix& matrix() const { return q_; }
    double operator()(int i, int j) const { return q_(i, j); }

private:
    Matrix q_;
};

/// Aggregate Frobenius norm budget of the perturbation:
/// (||E_1||_F^2 + ... + ||E_d||_F^2)^(1/2) <= epsilon.
struct NoiseBudget {
    double epsilon = 0.0;

    explicit NoiseBudget(double eps);
};

/// Reads a family from the JSON file format
/// {"n": <int>, "d": <int>, "matrices": [[n*n row-major floats], ...]}.
SymmetricFamily load_family(const std::string& path);

/// Writes the JSON family format with 17 significant digits per entry, so
/// load(save(f)) reproduces every double bit for bit.
void save_family(const SymmetricFamily& family, const std::string& path);

/// The d-by-d symmetric matrix of pairwise commutator norms,
/// entry (j,k) = ||A_j A_k - A_k A_j||_F. Diagonal is zero.
Matrix commutator_norms(const SymmetricFamily& family);

/// sum_k mu[k] * A_k. Computed on the upper triangle and mirrored, so the
/// output is symmetric exactly.
Matrix random_linear_combination(const SymmetricFamily& family,
                                 const std::vector<double>& mu);

}  // namespace jd
