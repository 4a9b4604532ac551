#include "jd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <string>

#include "jd/errors.hpp"
#include "jd/kernels.hpp"
#include "jd/rjd.hpp"

namespace jd::synth {

namespace {

void check_spec(const FamilySpec& spec) {
    if (spec.n < 1 || spec.d < 1)
        throw InvalidArgument("FamilySpec: n and d must be >= 1");
    if (!(spec.noise_epsilon >= 0.0))
        throw InvalidArgument("FamilySpec: noise_epsilon < 0");
    if (spec.law == EigenvalueLaw::kExplicit &&
        (spec.explicit_lambdas.rows() != spec.n ||
         spec.explicit_lambdas.cols() != spec.d))
        throw InvalidArgument("FamilySpec: explicit table must be n x d");
}

}  // namespace

Matrix haar_orthogonal(int n, rng::Stream& stream) {
    // Householder QR of a Gaussian matrix; multiplying each Q column by the
    // sign of the matching R diagonal makes the distribution Haar.
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = stream.normal();

    std::vector<std::vector<double>> reflectors;
    std::vector<double> rdiag(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<double> v(static_cast<std::size_t>(n - j));
        double norm = 0.0;
        for (int i = j; i < n; ++i) {
            v[i - j] = g(i, j);
            norm += g(i, j) * g(i, j);
        }
        norm = std::sqrt(norm);
        const double alpha = v[0] >= 0.0 ? -norm : norm;
        rdiag[j] = alpha;
        v[0] -= alpha;
        double vnorm = 0.0;
        for (double x : v) vnorm += x * x;
        vnorm = std::sqrt(vnorm);
        if (vnorm > 0.0)
            for (double& x : v) x /= vnorm;
        // Apply H = I - 2vv^T to the trailing columns.
        for (int c = j; c < n; ++c) {
            double dot = 0.0;
            for (int i = j; i < n; ++i) dot += v[i - j] * g(i, c);
            for (int i = j; i < n; ++i) g(i, c) -= 2.0 * dot * v[i - j];
        }
        reflectors.push_back(std::move(v));
    }

    Matrix q = Matrix::identity(n);
    for (int j = n - 1; j >= 0; --j) {
        const auto& v = reflectors[j];
        for (int c = 0; c < n; ++c) {
            double dot = 0.0;
            for (int i = j; i < n; ++i) dot += v[i - j] * q(i, c);
            for (int i = j; i < n; ++i) q(i, c) -= 2.0 * dot * v[i - j];
        }
    }
    for (int j = 0; j < n; ++j) {
        const double s = rdiag[j] < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) q(i, j) *= s;
    }
    return q;
}

CommutingFamily generate_commuting(const FamilySpec& spec) {
    check_spec(spec);
    if (spec.noise_epsilon != 0.0)
        throw InvalidArgument(
            "generate_commuting: spec must have noise_epsilon == 0; "
            "use add_noise for the perturbation");

    rng::Stream stream(rng::derive(spec.seed, rng::kTagFamily));
    Matrix q0 = haar_orthogonal(spec.n, stream);

    Matrix lambdas(spec.n, spec.d);
    if (spec.law == EigenvalueLaw::kExplicit) {
        lambdas = spec.explicit_lambdas;
    } else {
        const double lo = spec.positive_definite ? 0.01 : -1.0;
        const double hi = spec.positive_definite ? 1.01 : 1.0;
        for (int i = 0; i < spec.n; ++i)
            for (int k = 0; k < spec.d; ++k)
                lambdas(i, k) = stream.uniform(lo, hi);
    }

    std::vector<Matrix> mats;
    mats.reserve(static_cast<std::size_t>(spec.d));
    for (int k = 0; k < spec.d; ++k) {
        Matrix a(spec.n, spec.n);
        for (int i = 0; i < spec.n; ++i)
            for (int j = i; j < spec.n; ++j) {
                double s = 0.0;
                for (int r = 0; r < spec.n; ++r)
                    s += lambdas(r, k) * q0(i, r) * q0(j, r);
                a(i, j) = s;
                a(j, i) = s;
            }
        mats.push_back(std::move(a));
    }
    return CommutingFamily{SymmetricFamily(std::move(mats)),
                           GroundTruth{OrthogonalMatrix(std::move(q0)),
                                       std::move(lambdas)}};
}

SymmetricFamily add_noise(const SymmetricFamily& family, double epsilon,
                          std::uint64_t seed) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("add_noise: epsilon < 0");
    if (epsilon == 0.0) return family;

    rng::Stream stream(rng::derive(seed, rng::kTagNoise));
    const int n = family.n();
    std::vector<Matrix> noise;
    noise.reserve(static_cast<std::size_t>(family.d()));
    double total_sq = 0.0;
    for (int k = 0; k < family.d(); ++k) {
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = stream.normal();
        Matrix e = symmetrize(g);
        const double f = frobenius_norm(e);
        total_sq += f * f;
        noise.push_back(std::move(e));
    }
    const double scale = epsilon / std::sqrt(total_sq);

    std::vector<Matrix> out;
    out.reserve(noise.size());
    for (int k = 0; k < family.d(); ++k) {
        Matrix a = family.matrix(k);
        const Matrix& e = noise[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < a.size(); ++i)
            a.data()[i] += scale * e.data()[i];
        out.push_back(std::move(a));
    }
    return SymmetricFamily(std::move(out));
}

ClusterAssignment cluster_eigenvalue_vectors(const Matrix& lambdas,
                                             double delta) {
    if (!(delta > 0.0))
        throw InvalidArgument("cluster_eigenvalue_vectors: delta must be > 0");
    const int n = lambdas.rows();
    const int d = lambdas.cols();

    auto dist = [&](int i, int j) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
            const double diff = lambdas(i, k) - lambdas(j, k);
            s += diff * diff;
        }
        return std::sqrt(s);
    };

    ClusterAssignment out;
    out.delta = delta;
    out.k_of.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (out.k_of[i] != 0) continue;
        const int label = ++out.m;
        std::deque<int> frontier{i};
        out.k_of[i] = label;
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop_front();
            for (int j = 0; j < n; ++j)
                if (out.k_of[j] == 0 && dist(u, j) <= delta) {
                    out.k_of[j] = label;
                    frontier.push_back(j);
                }
        }
    }
    return out;
}

namespace {

void check_grid(const ExperimentGrid& grid) {
    if (grid.n < 1 || grid.d < 1)
        throw InvalidArgument("ExperimentGrid: n and d must be >= 1");
    if (grid.trials < 1)
        throw InvalidArgument("ExperimentGrid: trials must be >= 1");
    if (grid.repeats < 1)
        throw InvalidArgument("ExperimentGrid: repeats must be >= 1");
    if (grid.r_values.empty())
        throw InvalidArgument("ExperimentGrid: no R values");
    for (double r : grid.r_values)
        if (!(r > 1.0))
            throw InvalidArgument("ExperimentGrid: every R must be > 1");
    if (!(grid.epsilon >= 0.0))
        throw InvalidArgument("ExperimentGrid: epsilon < 0");
}

// Wilson 95% score interval for f successes out of n.
std::pair<double, double> wilson(long f, long n) {
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(f) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

std::vector<FailureRow> failure_probability_experiment(
    const ExperimentGrid& grid) {
    check_grid(grid);
    const double eps = std::max(grid.epsilon, 1e-15);

    FamilySpec spec;
    spec.n = grid.n;
    spec.d = grid.d;
    spec.seed = grid.seed;
    const CommutingFamily base = generate_commuting(spec);
    // One noise realization for the whole sweep: repeats only resample mu.
    const SymmetricFamily noisy = add_noise(base.family, eps, grid.seed);

    std::vector<double> errs(static_cast<std::size_t>(grid.repeats), 0.0);
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(static)
    for (long r = 0; r < grid.repeats; ++r) {
        try {
            const RjdResult res =
                rjd(noisy, grid.trials,
                    rng::derive(grid.seed, rng::kTagRepeat,
                                static_cast<std::uint64_t>(r)));
            errs[static_cast<std::size_t>(r)] =
                std::sqrt(res.best().total_offdiag_sq);
        } catch (const Error& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) throw NumericalError("failure experiment: " + failure);

    std::vector<FailureRow> rows;
    rows.reserve(grid.r_values.size());
    for (double r : grid.r_values) {
        long failures = 0;
        const double bar = r * eps;
        for (double e : errs)
            if (e >= bar) ++failures;
        FailureRow row;
        row.r = r;
        row.trials = grid.trials;
        row.failures = failures;
        row.repeats = grid.repeats;
        row.freq = static_cast<double>(failures) /
                   static_cast<double>(grid.repeats);
        const auto [lo, hi] = wilson(failures, grid.repeats);
        row.ci_lo = lo;
        row.ci_hi = hi;
        rows.push_back(row);
    }
    return rows;
}

void write_failure_csv(const std::vector<FailureRow>& rows,
                       std::ostream& out) {
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "R,L,failures,repeats,freq,ci_lo,ci_hi\n";
    for (const auto& row : rows)
        out << fmt(row.r) << ',' << row.trials << ',' << row.failures << ','
            << row.repeats << ',' << fmt(row.freq) << ',' << fmt(row.ci_lo)
            << ',' << fmt(row.ci_hi) << '\n';
}

std::optional<double> log_log_slope(const std::vector<FailureRow>& rows,
                                    double rm1_lo, double rm1_hi,
                                    long min_failures) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : rows) {
        const double rm1 = row.r - 1.0;
        if (rm1 < rm1_lo || rm1 > rm1_hi) continue;
        if (row.failures < min_failures) continue;
        pts.emplace_back(std::log(rm1), std::log(row.freq));
    }
    if (pts.size() < 2) return std::nullopt;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace jd::synth
