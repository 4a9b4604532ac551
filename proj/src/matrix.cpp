#include "jd/matrix.hpp"

#include <cmath>

#include "jd/errors.hpp"

namespace jd {

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    const double* p = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgument("frobenius_distance: shape mismatch");
    double s = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = pa[i] - pb[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    const double* p = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) v = std::max(v, std::abs(p[i]));
    return v;
}

Matrix symmetrize(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("symmetrize: not square");
    Matrix s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

double asymmetry_norm(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("asymmetry_norm: not square");
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const double d = m(i, j) - m(j, i);
            s += d * d;
        }
    return std::sqrt(s);
}

}  // namespace jd
