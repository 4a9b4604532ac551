#pragma once

// Shared helpers and independent oracles for the test suites. Everything
// here is test-only and deliberately written along different code paths
// than the library (naive loops, brute-force enumeration).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "jd/family.hpp"
#include "jd/matrix.hpp"
#include "jd/rng.hpp"
#include "jd/synth.hpp"

namespace testutil {

inline jd::Matrix random_symmetric(int n, jd::rng::Stream& stream) {
    jd::Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = stream.normal();
    return jd::symmetrize(g);
}

inline jd::SymmetricFamily random_family(int n, int d,
                                         jd::rng::Stream& stream) {
    std::vector<jd::Matrix> mats;
    mats.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) mats.push_back(random_symmetric(n, stream));
    return jd::SymmetricFamily(std::move(mats));
}

/// Noisy nearly-commuting family, the generic RJD/DRJD test input.
inline jd::SymmetricFamily noisy_family(int n, int d, double eps,
                                        std::uint64_t seed) {
    jd::synth::FamilySpec spec;
    spec.n = n;
    spec.d = d;
    spec.seed = seed;
    return jd::synth::add_noise(jd::synth::generate_commuting(spec).family,
                                eps, seed);
}

/// Roots of the characteristic polynomial of a symmetric 3x3 matrix via the
/// trigonometric solution of the depressed cubic. All roots are real.
inline std::vector<double> cubic_eigen_oracle(const jd::Matrix& a) {
    const double c2 = a(0, 0) + a(1, 1) + a(2, 2);
    const double c1 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) +
                      a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                      a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    const double c0 = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                      a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                      a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    // lambda^3 - c2 lambda^2 + c1 lambda - c0 = 0; shift to t^3 + p t + q.
    const double p = c1 - c2 * c2 / 3.0;
    const double q = -c0 + c1 * c2 / 3.0 - 2.0 * c2 * c2 * c2 / 27.0;
    std::vector<double> roots;
    if (p >= -1e-14) {
        // Near-triple root.
        roots = {c2 / 3.0, c2 / 3.0, c2 / 3.0};
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(
                m * std::cos(theta - 2.0 * 3.14159265358979323846 * k / 3.0) +
                c2 / 3.0);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Brute-force union-find over all pairs within delta: the independent
/// oracle for single-linkage clustering. Returns labels in {1..m} numbered
/// by first-member index.
inline std::vector<int> union_find_clusters(const jd::Matrix& lambdas,
                                            double delta) {
    const int n = lambdas.rows();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < lambdas.cols(); ++k) {
                const double diff = lambdas(i, k) - lambdas(j, k);
                s += diff * diff;
            }
            if (std::sqrt(s) <= delta) {
                const int ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (label[r] == 0) label[r] = ++next;
        label[i] = label[r];
    }
    return label;
}

inline double orthogonality_defect(const jd::Matrix& q) {
    const int n = q.rows();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double g = 0.0;
            for (int r = 0; r < n; ++r) g += q(r, i) * q(r, j);
            const double d = g - (i == j ? 1.0 : 0.0);
            s += d * d;
        }
    return std::sqrt(s);
}

}  // namespace testutil
