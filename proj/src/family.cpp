#include "jd/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jd/errors.hpp"
#include "jd/kernels.hpp"

namespace jd {

SymmetricFamily::SymmetricFamily(std::vector<Matrix> matrices) {
    if (matrices.empty())
        throw InvalidArgument("SymmetricFamily: family must have d >= 1");
    n_ = matrices[0].rows();
    if (n_ < 1) throw InvalidArgument("SymmetricFamily: n must be >= 1");

    double max_norm = 0.0;
    double max_asym = 0.0;
    for (const auto& m : matrices) {
        if (m.rows() != n_ || m.cols() != n_)
            throw InvalidArgument(
                "SymmetricFamily: matrices have inconsistent dimensions");
        max_norm = std::max(max_norm, frobenius_norm(m));
        max_asym = std::max(max_asym, asymmetry_norm(m));
    }
    if (max_asym > kAsymmetryAccept * max_norm)
        throw InvalidArgument(
            "SymmetricFamily: matrix asymmetry exceeds relative tolerance " +
            std::to_string(kAsymmetryAccept));
    for (auto& m : matrices) m = symmetrize(m);
    matrices_ = std::move(matrices);
}

double SymmetricFamily::total_sq_norm() const {
    double s = 0.0;
    for (const auto& m : matrices_) {
        const double f = frobenius_norm(m);
        s += f * f;
    }
    return s;
}

OrthogonalMatrix::OrthogonalMatrix(Matrix q) : q_(std::move(q)) {
    if (q_.rows() != q_.cols() || q_.rows() < 1)
        throw InvalidArgument("OrthogonalMatrix: not square");
    const int n = q_.rows();
    const Matrix gram = kernels::matmul_tn(q_, q_);
    const double dev = frobenius_distance(gram, Matrix::identity(n));
    if (dev > 1e-10 * std::sqrt(static_cast<double>(n)))
        throw InvalidArgument(
            "OrthogonalMatrix: ||Q^T Q - I||_F = " + std::to_string(dev) +
            " exceeds tolerance");
}

NoiseBudget::NoiseBudget(double eps) : epsilon(eps) {
    if (!(eps >= 0.0)) throw InvalidArgument("NoiseBudget: epsilon < 0");
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

SymmetricFamily load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open family file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("family file " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("d") ||
        !j.contains("matrices"))
        throw ParseError("family file " + path +
                         ": expected keys n, d, matrices");
    int n, d;
    std::vector<std::vector<double>> raw;
    try {
        n = j.at("n").get<int>();
        d = j.at("d").get<int>();
        raw = j.at("matrices").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("family file " + path + ": " + e.what());
    }
    if (n < 1 || d < 1)
        throw ParseError("family file " + path + ": n and d must be >= 1");
    if (static_cast<int>(raw.size()) != d)
        throw ParseError("family file " + path + ": expected " +
                         std::to_string(d) + " matrices, found " +
                         std::to_string(raw.size()));
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<Matrix> mats;
    mats.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
        if (raw[k].size() != nn)
            throw ParseError("family file " + path + ": matrix " +
                             std::to_string(k) + " has " +
                             std::to_string(raw[k].size()) +
                             " entries, expected n*n = " + std::to_string(nn));
        Matrix m(n, n);
        std::copy(raw[k].begin(), raw[k].end(), m.data());
        mats.push_back(std::move(m));
    }
    return SymmetricFamily(std::move(mats));
}

void save_family(const SymmetricFamily& family, const std::string& path) {
    // Hand-rolled writer: the format pins floats at 17 significant digits.
    std::ostringstream out;
    out << "{\n  \"n\": " << family.n() << ",\n  \"d\": " << family.d()
        << ",\n  \"matrices\": [\n";
    for (int k = 0; k < family.d(); ++k) {
        const Matrix& m = family.matrix(k);
        out << "    [";
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) out << ", ";
            out << format_double(m.data()[i]);
        }
        out << (k + 1 < family.d() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";

    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << out.str();
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

Matrix commutator_norms(const SymmetricFamily& family) {
    const int d = family.d();
    Matrix c(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            const Matrix jk =
                kernels::matmul(family.matrix(j), family.matrix(k));
            const Matrix kj =
                kernels::matmul(family.matrix(k), family.matrix(j));
            const double norm = frobenius_distance(jk, kj);
            c(j, k) = norm;
            c(k, j) = norm;
        }
    return c;
}

Matrix random_linear_combination(const SymmetricFamily& family,
                                 const std::vector<double>& mu) {
    if (static_cast<int>(mu.size()) != family.d())
        throw InvalidArgument(
            "random_linear_combination: mu length != family size");
    return kernels::lincomb_symmetric(family.matrices(), mu);
}

}  // namespace jd
