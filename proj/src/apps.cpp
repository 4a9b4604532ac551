#include "jd/apps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jd/eig.hpp"
#include "jd/errors.hpp"
#include "jd/kernels.hpp"
#include "jd/rng.hpp"
#include "jd/synth.hpp"

namespace jd::apps {

namespace {

constexpr std::uint64_t kTagTopicJd = 0x07;

Matrix center_columns(const Matrix& x) {
    const int t = x.rows(), n = x.cols();
    std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < t; ++r)
        for (int j = 0; j < n; ++j) mean[j] += x(r, j);
    for (auto& m : mean) m /= t;
    Matrix out(t, n);
    for (int r = 0; r < t; ++r)
        for (int j = 0; j < n; ++j) out(r, j) = x(r, j) - mean[j];
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

SignalMatrix::SignalMatrix(Matrix samples) : samples_(std::move(samples)) {
    if (samples_.cols() < 1)
        throw InvalidArgument("SignalMatrix: needs at least one channel");
    if (samples_.rows() <= samples_.cols())
        throw InvalidArgument("SignalMatrix: requires T > n");
}

SignalMatrix load_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open signal file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
            } catch (const std::exception&) {
                throw ParseError("signal file " + path +
                                 ": bad number '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("signal file " + path +
                             ": ragged row at line " +
                             std::to_string(rows.size() + 1));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("signal file " + path + ": empty");
    Matrix m(static_cast<int>(rows.size()),
             static_cast<int>(rows.front().size()));
    for (int r = 0; r < m.rows(); ++r)
        for (int j = 0; j < m.cols(); ++j)
            m(r, j) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    return SignalMatrix(std::move(m));
}

void save_signal_csv(const SignalMatrix& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    const Matrix& m = x.samples();
    for (int r = 0; r < m.rows(); ++r) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(r, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Whitening whiten(const Matrix& cov, int rank) {
    const int n = cov.rows();
    if (cov.cols() != n) throw InvalidArgument("whiten: cov not square");
    if (rank < 1 || rank > n)
        throw InvalidArgument("whiten: rank must be in [1, n]");

    const EigenDecomposition eig = symmetric_eig(cov);
    double trace = 0.0;
    for (double l : eig.lambda) trace += l;
    const double floor = 1e-12 * trace;
    // Ascending order: the top-k live in the last k slots.
    if (!(eig.lambda[static_cast<std::size_t>(n - rank)] > floor))
        throw NumericalError(
            "whiten: rank-deficient input, eigenvalue " +
            std::to_string(rank) + " of " + std::to_string(n) +
            " is below 1e-12 * trace");

    Whitening out;
    out.w = Matrix(rank, n);
    out.pinv = Matrix(n, rank);
    for (int r = 0; r < rank; ++r) {
        const int src = n - 1 - r;  // descending eigenvalues
        const double lam = eig.lambda[static_cast<std::size_t>(src)];
        const double isqrt = 1.0 / std::sqrt(lam);
        const double fsqrt = std::sqrt(lam);
        for (int j = 0; j < n; ++j) {
            out.w(r, j) = isqrt * eig.q(j, src);
            out.pinv(j, r) = fsqrt * eig.q(j, src);
        }
    }
    return out;
}

std::vector<Matrix> default_probes(int n, int count, std::uint64_t seed) {
    if (n < 1 || count < 1)
        throw InvalidArgument("default_probes: n and count must be >= 1");
    std::vector<Matrix> probes;
    probes.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < n && static_cast<int>(probes.size()) < count; ++i)
        for (int j = i; j < n && static_cast<int>(probes.size()) < count; ++j) {
            Matrix e(n, n);
            e(i, j) += 1.0;
            e(j, i) += 1.0;
            if (i == j) e(i, i) = 1.0;
            probes.push_back(std::move(e));
        }
    rng::Stream stream(rng::derive(seed, rng::kTagProbe));
    while (static_cast<int>(probes.size()) < count) {
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = stream.normal();
        probes.push_back(symmetrize(g));
    }
    return probes;
}

SymmetricFamily cumulant_matrices(const SignalMatrix& x,
                                  const std::vector<Matrix>& probes) {
    const int n = x.n();
    const int t = x.t();
    if (probes.empty()) throw InvalidArgument("cumulant_matrices: no probes");
    for (const auto& p : probes) {
        if (p.rows() != n || p.cols() != n)
            throw InvalidArgument("cumulant_matrices: probe dimension mismatch");
        if (asymmetry_norm(p) > 1e-12 * std::max(1.0, frobenius_norm(p)))
            throw InvalidArgument("cumulant_matrices: probes must be symmetric");
    }
    if (t < 10 * n * n)
        throw InvalidArgument(
            "cumulant_matrices: need T >= 10 n^2 samples for a usable "
            "fourth-order estimate (have T = " + std::to_string(t) +
            ", n = " + std::to_string(n) + ")");

    const Matrix xc = center_columns(x.samples());
    std::vector<double> m2 = kernels::moment2_sums(xc);
    std::vector<double> m4 = kernels::moment4_sums(xc);
    const double inv_t = 1.0 / static_cast<double>(t);
    for (auto& v : m2) v *= inv_t;
    for (auto& v : m4) v *= inv_t;

    const auto at2 = [&](int i, int j) {
        return m2[static_cast<std::size_t>(i) * n + j];
    };
    const auto at4 = [&](int i, int j, int k, int l) {
        return m4[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    };

    std::vector<Matrix> out;
    out.reserve(probes.size());
    for (const auto& probe : probes) {
        Matrix q(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const double cum = at4(i, j, k, l) -
                                           at2(i, j) * at2(k, l) -
                                           at2(i, k) * at2(j, l) -
                                           at2(i, l) * at2(j, k);
                        s += cum * probe(k, l);
                    }
                q(i, j) = s;
            }
        out.push_back(symmetrize(q));
    }
    return SymmetricFamily(std::move(out));
}

Matrix bss_separate(const SignalMatrix& x, int probe_count, JdAlgo algo,
                    int trials, std::uint64_t seed) {
    if (probe_count < 1)
        throw InvalidArgument("bss_separate: probe_count must be >= 1");
    const int n = x.n();
    const Matrix xc = center_columns(x.samples());

    std::vector<double> m2 = kernels::moment2_sums(xc);
    Matrix cov(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cov(i, j) = m2[static_cast<std::size_t>(i) * n + j] /
                        static_cast<double>(x.t());
    cov = symmetrize(cov);

    const Whitening wh = whiten(cov, n);
    // Whitened samples y_t = W x_t, i.e. rows of Xc times W^T.
    const Matrix y = kernels::matmul(xc, transpose(wh.w));

    const SymmetricFamily family = cumulant_matrices(
        SignalMatrix(y), default_probes(n, probe_count, seed));

    Matrix q(n, n);
    if (algo == JdAlgo::kRjd)
        q = rjd(family, trials, seed).best().q.matrix();
    else
        q = drjd(family, trials, seed).q.matrix();
    return kernels::matmul_tn(q, wh.w);
}

BssDemo make_bss_demo(int samples, std::uint64_t seed) {
    if (samples <= 4) throw InvalidArgument("make_bss_demo: need T > 4");
    const int n = 4;
    rng::Stream stream(rng::derive(seed, rng::kTagDemo));
    const Matrix mixing = synth::haar_orthogonal(n, stream);

    // Sources: three unit-variance Laplace channels (difference of two
    // exponentials) and one Gaussian channel.
    const double b = 1.0 / std::sqrt(2.0);
    Matrix s(samples, n);
    for (int r = 0; r < samples; ++r) {
        for (int j = 0; j < 3; ++j)
            s(r, j) = b * std::log(stream.uniform_open0() /
                                   stream.uniform_open0());
        s(r, 3) = stream.normal();
    }
    Matrix x = kernels::matmul(s, transpose(mixing));
    return BssDemo{SignalMatrix(std::move(x)), mixing};
}

TopicModel make_topic_model(std::vector<double> omega, Matrix m) {
    const int n = m.rows();
    const int k = m.cols();
    if (k < 1 || n < 1) throw InvalidArgument("TopicModel: empty model");
    if (k > n) throw InvalidArgument("TopicModel: requires k <= n");
    if (static_cast<int>(omega.size()) != k)
        throw InvalidArgument("TopicModel: omega length != topic count");
    double sum = 0.0;
    for (double w : omega) {
        if (!(w > 0.0)) throw InvalidArgument("TopicModel: omega entries must be > 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidArgument("TopicModel: omega must sum to 1");
    for (int i = 0; i < k; ++i) {
        double col = 0.0;
        for (int j = 0; j < n; ++j) {
            if (m(j, i) < 0.0)
                throw InvalidArgument("TopicModel: mu entries must be >= 0");
            col += m(j, i);
        }
        if (std::abs(col - 1.0) > 1e-6)
            throw InvalidArgument("TopicModel: each mu column must sum to 1");
    }
    return TopicModel{std::move(omega), std::move(m)};
}

TopicModel load_topic_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open topic model: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("topic model " + path + ": " + e.what());
    }
    std::vector<double> omega;
    std::vector<std::vector<double>> mu;
    try {
        omega = j.at("omega").get<std::vector<double>>();
        mu = j.at("mu").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("topic model " + path + ": " + e.what());
    }
    if (mu.empty() || mu.size() != omega.size())
        throw ParseError("topic model " + path +
                         ": mu must hold one row per topic");
    const std::size_t n = mu.front().size();
    for (const auto& row : mu)
        if (row.size() != n)
            throw ParseError("topic model " + path + ": ragged mu rows");
    Matrix m(static_cast<int>(n), static_cast<int>(mu.size()));
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t jv = 0; jv < n; ++jv)
            m(static_cast<int>(jv), static_cast<int>(i)) = mu[i][jv];
    return make_topic_model(std::move(omega), std::move(m));
}

void save_topic_model(const TopicModel& model, const std::string& path) {
    nlohmann::json j;
    j["omega"] = model.omega;
    std::vector<std::vector<double>> mu(
        static_cast<std::size_t>(model.topics()));
    for (int i = 0; i < model.topics(); ++i) {
        mu[static_cast<std::size_t>(i)].resize(
            static_cast<std::size_t>(model.vocab()));
        for (int jv = 0; jv < model.vocab(); ++jv)
            mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(jv)] =
                model.m(jv, i);
    }
    j["mu"] = mu;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

TopicMoments topic_moments_exact(const TopicModel& model) {
    const int n = model.vocab();
    const int k = model.topics();
    TopicMoments out;
    out.m2 = Matrix(n, n);
    out.m3_slices.assign(static_cast<std::size_t>(n), Matrix(n, n));
    for (int i = 0; i < k; ++i) {
        const double w = model.omega[static_cast<std::size_t>(i)];
        for (int a = 0; a < n; ++a)
            for (int bcol = 0; bcol < n; ++bcol) {
                const double outer = model.m(a, i) * model.m(bcol, i);
                out.m2(a, bcol) += w * outer;
                for (int j = 0; j < n; ++j)
                    out.m3_slices[static_cast<std::size_t>(j)](a, bcol) +=
                        w * model.m(j, i) * outer;
            }
    }
    return out;
}

TopicModel topic_recover(const Matrix& m2,
                         const std::vector<Matrix>& m3_slices, int k,
                         int trials, std::uint64_t seed) {
    const int n = m2.rows();
    if (m2.cols() != n) throw InvalidArgument("topic_recover: m2 not square");
    if (static_cast<int>(m3_slices.size()) != n)
        throw InvalidArgument("topic_recover: expected n third-moment slices");
    for (const auto& s : m3_slices)
        if (s.rows() != n || s.cols() != n)
            throw InvalidArgument("topic_recover: slice dimension mismatch");
    if (k < 1 || k > n)
        throw InvalidArgument("topic_recover: k must be in [1, n]");

    const Whitening wh = whiten(symmetrize(m2), k);
    std::vector<Matrix> family;
    family.reserve(m3_slices.size() + 1);
    family.push_back(symmetrize(kernels::congruence(transpose(wh.w), m2)));
    for (const auto& s : m3_slices)
        family.push_back(
            symmetrize(kernels::congruence(transpose(wh.w), symmetrize(s))));

    const RjdResult res = rjd(SymmetricFamily(std::move(family)), trials,
                              rng::derive(seed, kTagTopicJd));
    const Matrix& q = res.best().q.matrix();

    // Each unwhitened column is sqrt(omega_i) * mu_i up to sign; dividing
    // by its sum z recovers mu_i (columns are stochastic) and z^2 = omega_i.
    const Matrix c = kernels::matmul(wh.pinv, q);
    std::vector<double> omega(static_cast<std::size_t>(k));
    Matrix mu(n, k);
    for (int i = 0; i < k; ++i) {
        double z = 0.0;
        for (int j = 0; j < n; ++j) z += c(j, i);
        if (std::abs(z) < 1e-12)
            throw NumericalError(
                "topic_recover: degenerate topic direction (zero column sum)");
        omega[static_cast<std::size_t>(i)] = z * z;
        for (int j = 0; j < n; ++j) {
            double v = c(j, i) / z;
            if (v < 0.0) {
                if (v < -1e-8)
                    throw NumericalError(
                        "topic_recover: negative recovered weight " +
                        std::to_string(v) + " signals invalid input");
                v = 0.0;
            }
            mu(j, i) = v;
        }
    }

    // Present topics in descending-probability order.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b2) {
        return omega[static_cast<std::size_t>(a)] >
               omega[static_cast<std::size_t>(b2)];
    });
    std::vector<double> omega_sorted(static_cast<std::size_t>(k));
    Matrix mu_sorted(n, k);
    for (int i = 0; i < k; ++i) {
        omega_sorted[static_cast<std::size_t>(i)] =
            omega[static_cast<std::size_t>(order[i])];
        for (int j = 0; j < n; ++j) mu_sorted(j, i) = mu(j, order[i]);
    }
    return TopicModel{std::move(omega_sorted), std::move(mu_sorted)};
}

TopicMatch match_topics(const TopicModel& truth, const TopicModel& estimate) {
    const int k = truth.topics();
    if (estimate.topics() != k || estimate.vocab() != truth.vocab())
        throw InvalidArgument("match_topics: shape mismatch");
    if (k > 8) throw InvalidArgument("match_topics: k > 8 not supported");

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    TopicMatch best;
    double best_score = -1.0;
    do {
        double omega_err = 0.0, mu_err = 0.0;
        for (int i = 0; i < k; ++i) {
            omega_err = std::max(
                omega_err,
                std::abs(truth.omega[static_cast<std::size_t>(i)] -
                         estimate.omega[static_cast<std::size_t>(perm[i])]));
            for (int j = 0; j < truth.vocab(); ++j)
                mu_err = std::max(mu_err, std::abs(truth.m(j, i) -
                                                   estimate.m(j, perm[i])));
        }
        const double score = std::max(omega_err, mu_err);
        if (best_score < 0.0 || score < best_score) {
            best_score = score;
            best.perm = perm;
            best.max_omega_err = omega_err;
            best.max_mu_err = mu_err;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace jd::apps
