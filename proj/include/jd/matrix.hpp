#pragma once

#include <cstddef>
#include <vector>

namespace jd {

/// Dense real matrix, row-major. The library works with squares of modest
/// size (n up to a few hundred), so there is no sparse path.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
             0.0) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }
    std::size_t size() const { return a_.size(); }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    int rows_, cols_;
    std::vector<double> a_;
};

Matrix transpose(const Matrix& m);

double frobenius_norm(const Matrix& m);

/// ||a - b||_F without materializing the difference.
double frobenius_distance(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& m);

/// (m + m^T) / 2. Requires m square.
Matrix symmetrize(const Matrix& m);

/// ||m - m^T||_F. Requires m square.
double asymmetry_norm(const Matrix& m);

}  // namespace jd
