#include "jd/metrics.hpp"

#include <cmath>
#include <string>

#include "jd/errors.hpp"
#include "jd/kernels.hpp"

namespace jd {

namespace {

void check_dims(const SymmetricFamily& family, const OrthogonalMatrix& q) {
    if (q.n() != family.n())
        throw InvalidArgument("metrics: family/q dimension mismatch");
}

// Cholesky log-determinant. Returns nullopt if the matrix is not positive
// definite (failed pivot). Input is read from the lower triangle.
std::optional<double> cholesky_logdet(const Matrix& a) {
    const int n = a.rows();
    Matrix l(n, n);
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (!(s > 0.0)) return std::nullopt;
                l(i, i) = std::sqrt(s);
                logdet += std::log(l(i, i));
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return 2.0 * logdet;
}

}  // namespace

Matrix offdiag(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("offdiag: not square");
    Matrix out = a;
    for (int i = 0; i < a.rows(); ++i) out(i, i) = 0.0;
    return out;
}

double least_squares_measure(const SymmetricFamily& family,
                             const OrthogonalMatrix& q) {
    check_dims(family, q);
    const std::vector<double> resid =
        kernels::family_column_residuals(family.matrices(), q.matrix());
    double total = 0.0;
    for (double r : resid) total += r;
    return total;
}

double pham_measure(const SymmetricFamily& family, const OrthogonalMatrix& q) {
    check_dims(family, q);
    double sum = 0.0;
    for (int k = 0; k < family.d(); ++k) {
        const Matrix b = kernels::congruence(q.matrix(), family.matrix(k));
        const std::optional<double> logdet = cholesky_logdet(b);
        if (!logdet)
            throw NumericalError(
                "pham_measure: conjugated matrix " + std::to_string(k) +
                " is not positive definite");
        double logdet_diag = 0.0;
        for (int i = 0; i < b.rows(); ++i) logdet_diag += std::log(b(i, i));
        sum += logdet_diag - *logdet;
    }
    return sum / (2.0 * family.n());
}

JointDiagScore score_joint_diag(const SymmetricFamily& family,
                                const OrthogonalMatrix& q) {
    JointDiagScore score;
    score.least_squares = least_squares_measure(family, q);
    try {
        score.pham = pham_measure(family, q);
    } catch (const NumericalError&) {
        score.pham = std::nullopt;
    }
    return score;
}

double moreau_amari(const Matrix& m) {
    const int n = m.rows();
    if (n != m.cols() || n < 2)
        throw InvalidArgument("moreau_amari: requires a square matrix, n >= 2");
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0, row_max = 0.0, col_sum = 0.0, col_max = 0.0;
        for (int j = 0; j < n; ++j) {
            const double rij = std::abs(m(i, j));
            row_sum += rij;
            row_max = std::max(row_max, rij);
            const double cji = std::abs(m(j, i));
            col_sum += cji;
            col_max = std::max(col_max, cji);
        }
        if (row_max == 0.0 || col_max == 0.0)
            throw InvalidArgument(
                "moreau_amari: all-zero row or column at index " +
                std::to_string(i));
        sum += row_sum / row_max + col_sum / col_max - 2.0;
    }
    return sum / (2.0 * n * (n - 1));
}

}  // namespace jd
