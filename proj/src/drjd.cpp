#include "jd/drjd.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "jd/errors.hpp"
#include "jd/kernels.hpp"
#include "jd/rng.hpp"

namespace jd {

std::vector<double> column_residuals(const SymmetricFamily& family,
                                     const OrthogonalMatrix& q) {
    if (q.n() != family.n())
        throw InvalidArgument("column_residuals: dimension mismatch");
    return kernels::family_column_residuals(family.matrices(), q.matrix());
}

namespace {

Matrix take_columns(const Matrix& q, const std::vector<int>& cols) {
    Matrix out(q.rows(), static_cast<int>(cols.size()));
    for (int j = 0; j < out.cols(); ++j)
        for (int i = 0; i < q.rows(); ++i) out(i, j) = q(i, cols[j]);
    return out;
}

Matrix drjd_recurse(const SymmetricFamily& family, int trials,
                    std::uint64_t master, int level, DeflationTrace& trace) {
    const int n = family.n();
    if (n == 1) return Matrix::identity(1);

    RjdResult res;
    try {
        res = rjd(family, trials, rng::derive(master, rng::kTagLevel,
                                              static_cast<std::uint64_t>(level)));
    } catch (const NumericalError& e) {
        throw NumericalError("drjd: level " + std::to_string(level) + ": " +
                             e.what());
    }

    // t_i = best column residual of trial i; the acceptance threshold is
    // twice the best of those, so the winning trial always passes at least
    // the column that attained the minimum.
    double min_ti = res.trials[0].column_residual_sq[0];
    for (const auto& trial : res.trials)
        for (double r : trial.column_residual_sq) min_ti = std::min(min_ti, r);
    const double threshold = 2.0 * min_ti;

    int best_trial = 0;
    int best_count = -1;
    for (int i = 0; i < static_cast<int>(res.trials.size()); ++i) {
        int count = 0;
        for (double r : res.trials[i].column_residual_sq)
            if (r <= threshold) ++count;
        if (count > best_count) {
            best_count = count;
            best_trial = i;
        }
    }

    const TrialResult& winner = res.trials[best_trial];
    std::vector<int> accepted, rejected;
    for (int j = 0; j < n; ++j) {
        if (winner.column_residual_sq[j] <= threshold)
            accepted.push_back(j);
        else
            rejected.push_back(j);
    }
    trace.levels.push_back(DeflationLevel{n, threshold,
                                          static_cast<int>(accepted.size()),
                                          best_trial});

    if (rejected.empty()) return winner.q.matrix();

    const Matrix q_suc = take_columns(winner.q.matrix(), accepted);
    const Matrix q_fail = take_columns(winner.q.matrix(), rejected);

    std::vector<Matrix> deflated;
    deflated.reserve(static_cast<std::size_t>(family.d()));
    for (int k = 0; k < family.d(); ++k)
        deflated.push_back(
            symmetrize(kernels::congruence(q_fail, family.matrix(k))));

    const Matrix q_rec = drjd_recurse(SymmetricFamily(std::move(deflated)),
                                      trials, master, level + 1, trace);
    const Matrix tail = kernels::matmul(q_fail, q_rec);

    Matrix out(n, n);
    const int ns = q_suc.cols();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < ns; ++j) out(i, j) = q_suc(i, j);
        for (int j = 0; j < tail.cols(); ++j) out(i, ns + j) = tail(i, j);
    }
    return out;
}

}  // namespace

DrjdResult drjd(const SymmetricFamily& family, int trials,
                std::uint64_t seed) {
    if (trials < 1) throw InvalidArgument("drjd: trials must be >= 1");
    DeflationTrace trace;
    Matrix q = drjd_recurse(family, trials, seed, 0, trace);
    return DrjdResult{OrthogonalMatrix(std::move(q)), std::move(trace)};
}

}  // namespace jd
