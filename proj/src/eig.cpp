#include "jd/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jd/errors.hpp"

namespace jd {

namespace {

// One Jacobi rotation in the (p,q) plane applied to the upper triangle of a
// and accumulated into v. Classic formulation: the pivot entry is zeroed
// exactly and the update uses the numerically stable tau form.
void rotate(Matrix& a, Matrix& v, int p, int q) {
    const int n = a.rows();
    const double apq = a(p, q);
    const double h = a(q, q) - a(p, p);
    double t;
    const double g = 100.0 * std::abs(apq);
    if (std::abs(h) + g == std::abs(h)) {
        t = apq / h;
    } else {
        const double theta = 0.5 * h / apq;
        t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = 0.0;

    auto update = [&](double& x, double& y) {
        const double xo = x, yo = y;
        x = xo - s * (yo + tau * xo);
        y = yo + s * (xo - tau * yo);
    };
    for (int j = 0; j < p; ++j) update(a(j, p), a(j, q));
    for (int j = p + 1; j < q; ++j) update(a(p, j), a(j, q));
    for (int j = q + 1; j < n; ++j) update(a(p, j), a(q, j));
    for (int j = 0; j < n; ++j) update(v(j, p), v(j, q));
}

double offdiag_abs_sum(const Matrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += std::abs(a(p, q));
    return s;
}

}  // namespace

EigenDecomposition symmetric_eig(const Matrix& a_in) {
    const int n = a_in.rows();
    if (n < 1 || a_in.cols() != n)
        throw InvalidArgument("symmetric_eig: input not square");
    const double scale = std::max(1.0, frobenius_norm(a_in));
    if (asymmetry_norm(a_in) > 1e-10 * scale)
        throw InvalidArgument("symmetric_eig: input is not symmetric");

    Matrix a = symmetrize(a_in);
    Matrix v = Matrix::identity(n);

    bool converged = false;
    for (int sweep = 1; sweep <= kMaxJacobiSweeps; ++sweep) {
        const double sm = offdiag_abs_sum(a);
        if (sm == 0.0) {
            converged = true;
            break;
        }
        // Early sweeps skip tiny pivots; later sweeps rotate everything
        // that is still representable next to its diagonal entries.
        const double tresh =
            sweep < 4 ? 0.2 * sm / (static_cast<double>(n) * n) : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(a(p, q));
                if (sweep > 4 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = 0.0;
                } else if (std::abs(a(p, q)) > tresh) {
                    rotate(a, v, p, q);
                }
            }
        }
    }
    if (!converged && offdiag_abs_sum(a) == 0.0) converged = true;
    if (!converged)
        throw NumericalError("symmetric_eig: no convergence within " +
                             std::to_string(kMaxJacobiSweeps) + " sweeps");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });

    std::vector<double> lambda(static_cast<std::size_t>(n));
    Matrix q(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        lambda[static_cast<std::size_t>(j)] = a(src, src);
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(imax, src))) imax = i;
        const double sgn = v(imax, src) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) q(i, j) = sgn * v(i, src);
    }
    return EigenDecomposition{OrthogonalMatrix(std::move(q)),
                              std::move(lambda)};
}

}  // namespace jd
