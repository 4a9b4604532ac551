#include "jd/kernels.hpp"

#include <algorithm>
#include <cstddef>

#include "jd/errors.hpp"

namespace jd::kernels {

namespace {

void check_mul(const Matrix& a, const Matrix& b, bool transpose_a) {
    const int inner = transpose_a ? a.rows() : a.cols();
    if (inner != b.rows()) throw InvalidArgument("matmul: shape mismatch");
}

void check_family(const std::vector<Matrix>& as, const Matrix& q) {
    if (as.empty()) throw InvalidArgument("kernels: empty family");
    const int n = q.rows();
    if (q.cols() != n) throw InvalidArgument("kernels: q not square");
    for (const auto& a : as)
        if (a.rows() != n || a.cols() != n)
            throw InvalidArgument("kernels: family/q dimension mismatch");
}

// Column residuals of one conjugated matrix, added into acc.
void add_column_offdiag_sq(const Matrix& b, std::vector<double>& acc) {
    const int n = b.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) acc[j] += b(i, j) * b(i, j);
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_mul(a, b, false);
    const int m = a.rows(), k = a.cols(), n = b.cols();
    Matrix c(m, n);
#pragma omp parallel for schedule(static) if (m >= 32)
    for (int i = 0; i < m; ++i) {
        double* ci = c.data() + static_cast<std::size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            const double aip = a(i, p);
            const double* bp = b.data() + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_mul(a, b, true);
    const int m = a.cols(), k = a.rows(), n = b.cols();
    Matrix c(m, n);
#pragma omp parallel for schedule(static) if (m >= 32)
    for (int i = 0; i < m; ++i) {
        double* ci = c.data() + static_cast<std::size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            const double api = a(p, i);
            const double* bp = b.data() + static_cast<std::size_t>(p) * n;
            for (int j = 0; j < n; ++j) ci[j] += api * bp[j];
        }
    }
    return c;
}

Matrix congruence(const Matrix& q, const Matrix& a) {
    return matmul_tn(q, matmul(a, q));
}

Matrix lincomb_symmetric(const std::vector<Matrix>& as,
                         const std::vector<double>& mu) {
    if (as.empty()) throw InvalidArgument("lincomb: empty family");
    if (mu.size() != as.size())
        throw InvalidArgument("lincomb: coefficient count != family size");
    const int n = as[0].rows();
    Matrix m(n, n);
#pragma omp parallel for schedule(static) if (n >= 32)
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < as.size(); ++k) s += mu[k] * as[k](i, j);
            m(i, j) = s;
            m(j, i) = s;
        }
    return m;
}

std::vector<double> family_column_residuals(const std::vector<Matrix>& as,
                                            const Matrix& q) {
    check_family(as, q);
    std::vector<double> resid(static_cast<std::size_t>(q.rows()), 0.0);
    for (const auto& a : as) add_column_offdiag_sq(congruence(q, a), resid);
    return resid;
}

double diag_congruence_sumsq(const std::vector<Matrix>& as, const Matrix& q) {
    check_family(as, q);
    const int n = q.rows();
    double total = 0.0;
    for (const auto& a : as) {
        const Matrix w = matmul(a, q);
        for (int i = 0; i < n; ++i) {
            double dii = 0.0;
            for (int r = 0; r < n; ++r) dii += q(r, i) * w(r, i);
            total += dii * dii;
        }
    }
    return total;
}

namespace {

// Shared chunked driver for the moment sums. dim = n^2 or n^4; fill(row,
// out) adds one sample's contribution. Chunk sums are combined in chunk
// order, so the result does not depend on how chunks map to threads.
template <typename Fill>
std::vector<double> chunked_sample_sums(const Matrix& x, std::size_t dim,
                                        Fill fill, bool parallel) {
    const int t = x.rows();
    const int nchunks = (t + kMomentChunk - 1) / kMomentChunk;
    std::vector<std::vector<double>> partial(
        static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(static) if (parallel)
    for (int c = 0; c < nchunks; ++c) {
        std::vector<double> local(dim, 0.0);
        const int lo = c * kMomentChunk;
        const int hi = std::min(t, lo + kMomentChunk);
        for (int r = lo; r < hi; ++r) fill(r, local);
        partial[static_cast<std::size_t>(c)] = std::move(local);
    }
    std::vector<double> total(dim, 0.0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < dim; ++i) total[i] += p[i];
    return total;
}

std::vector<double> moment2_impl(const Matrix& x, bool parallel) {
    const int n = x.cols();
    return chunked_sample_sums(
        x, static_cast<std::size_t>(n) * n,
        [&](int r, std::vector<double>& out) {
            const double* row = x.data() + static_cast<std::size_t>(r) * n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out[static_cast<std::size_t>(i) * n + j] += row[i] * row[j];
        },
        parallel);
}

std::vector<double> moment4_impl(const Matrix& x, bool parallel) {
    const int n = x.cols();
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    return chunked_sample_sums(
        x, n2 * n2,
        [&](int r, std::vector<double>& out) {
            const double* row = x.data() + static_cast<std::size_t>(r) * n;
            std::size_t idx = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double xij = row[i] * row[j];
                    for (int k = 0; k < n; ++k) {
                        const double xijk = xij * row[k];
                        for (int l = 0; l < n; ++l) out[idx++] += xijk * row[l];
                    }
                }
        },
        parallel);
}

}  // namespace

std::vector<double> moment2_sums(const Matrix& x) {
    return moment2_impl(x, true);
}

std::vector<double> moment4_sums(const Matrix& x) {
    return moment4_impl(x, true);
}

namespace ref {

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_mul(a, b, false);
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int p = 0; p < a.cols(); ++p)
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, p) * b(p, j);
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_mul(a, b, true);
    Matrix c(a.cols(), b.cols());
    for (int i = 0; i < a.cols(); ++i)
        for (int p = 0; p < a.rows(); ++p)
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(p, i) * b(p, j);
    return c;
}

Matrix congruence(const Matrix& q, const Matrix& a) {
    return matmul_tn(q, matmul(a, q));
}

Matrix lincomb_symmetric(const std::vector<Matrix>& as,
                         const std::vector<double>& mu) {
    if (as.empty()) throw InvalidArgument("lincomb: empty family");
    if (mu.size() != as.size())
        throw InvalidArgument("lincomb: coefficient count != family size");
    const int n = as[0].rows();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < as.size(); ++k) s += mu[k] * as[k](i, j);
            m(i, j) = s;
            m(j, i) = s;
        }
    return m;
}

std::vector<double> family_column_residuals(const std::vector<Matrix>& as,
                                            const Matrix& q) {
    check_family(as, q);
    std::vector<double> resid(static_cast<std::size_t>(q.rows()), 0.0);
    for (const auto& a : as) add_column_offdiag_sq(congruence(q, a), resid);
    return resid;
}

double diag_congruence_sumsq(const std::vector<Matrix>& as, const Matrix& q) {
    check_family(as, q);
    const int n = q.rows();
    double total = 0.0;
    for (const auto& a : as) {
        const Matrix w = matmul(a, q);
        for (int i = 0; i < n; ++i) {
            double dii = 0.0;
            for (int r = 0; r < n; ++r) dii += q(r, i) * w(r, i);
            total += dii * dii;
        }
    }
    return total;
}

std::vector<double> moment2_sums(const Matrix& x) {
    return moment2_impl(x, false);
}

std::vector<double> moment4_sums(const Matrix& x) {
    return moment4_impl(x, false);
}

}  // namespace ref

}  // namespace jd::kernels
