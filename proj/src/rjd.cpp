#include "jd/rjd.hpp"

#include <optional>
#include <string>
#include <utility>

#include "jd/eig.hpp"
#include "jd/errors.hpp"
#include "jd/kernels.hpp"
#include "jd/rng.hpp"

namespace jd {

namespace {

TrialResult run_trial(const SymmetricFamily& family, GaussianVector mu) {
    const Matrix combo =
        kernels::lincomb_symmetric(family.matrices(), mu.mu);
    EigenDecomposition eig = symmetric_eig(combo);
    std::vector<double> resid =
        kernels::family_column_residuals(family.matrices(), eig.q.matrix());
    double total = 0.0;
    for (double r : resid) total += r;
    return TrialResult{std::move(eig.q), total, std::move(resid),
                       std::move(mu)};
}

}  // namespace

RjdResult rjd(const SymmetricFamily& family, int trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidArgument("rjd: trials must be >= 1");

    // All mu vectors come out of one sequential stream before the trial
    // loop, so the draws are identical no matter how trials are scheduled.
    rng::Stream stream(seed);
    std::vector<GaussianVector> mus;
    mus.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; ++i)
        mus.push_back(GaussianVector{stream.normal_vector(family.d()), seed});

    std::vector<std::optional<TrialResult>> slots(
        static_cast<std::size_t>(trials));
    std::vector<std::string> failures(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic) if (trials > 1)
    for (int i = 0; i < trials; ++i) {
        try {
            slots[i] = run_trial(family, std::move(mus[i]));
        } catch (const Error& e) {
            failures[i] = e.what();
        }
    }
    for (int i = 0; i < trials; ++i)
        if (!slots[i])
            throw NumericalError("rjd: trial " + std::to_string(i) + ": " +
                                 failures[i]);

    RjdResult result;
    result.trials.reserve(static_cast<std::size_t>(trials));
    for (auto& s : slots) result.trials.push_back(std::move(*s));
    result.best_index = 0;
    for (int i = 1; i < trials; ++i)
        if (result.trials[i].total_offdiag_sq <
            result.trials[result.best_index].total_offdiag_sq)
            result.best_index = i;
    return result;
}

int select_by_diag(const std::vector<TrialResult>& trials,
                   const SymmetricFamily& family) {
    if (trials.empty()) throw InvalidArgument("select_by_diag: no trials");
    std::vector<double> score(trials.size());
    for (std::size_t i = 0; i < trials.size(); ++i)
        score[i] = kernels::diag_congruence_sumsq(family.matrices(),
                                                  trials[i].q.matrix());
    double best = score[0];
    for (double s : score) best = std::max(best, s);
    // Scores tied within 1e-12 relative resolve to the lowest index.
    for (std::size_t i = 0; i < score.size(); ++i)
        if (score[i] >= best - 1e-12 * best) return static_cast<int>(i);
    return 0;
}

EigenvalueVectors eigenvalue_vectors(const SymmetricFamily& family,
                                     const OrthogonalMatrix& q) {
    if (q.n() != family.n())
        throw InvalidArgument("eigenvalue_vectors: dimension mismatch");
    const int n = family.n();
    Matrix lambda(n, family.d());
    for (int k = 0; k < family.d(); ++k) {
        const Matrix w = kernels::matmul(family.matrix(k), q.matrix());
        for (int i = 0; i < n; ++i) {
            double dii = 0.0;
            for (int r = 0; r < n; ++r) dii += q(r, i) * w(r, i);
            lambda(i, k) = dii;
        }
    }
    return EigenvalueVectors{std::move(lambda)};
}

}  // namespace jd
