#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jd/drjd.hpp"
#include "jd/family.hpp"
#include "jd/matrix.hpp"
#include "jd/rjd.hpp"

namespace jd::apps {

/// Multichannel signal, rows = time samples, columns = channels (T > n).
class SignalMatrix {
public:
    explicit SignalMatrix(Matrix samples);

    int t() const { return samples_.rows(); }
    int n() const { return samples_.cols(); }
    const Matrix& samples() const { return samples_; }

private:
    Matrix samples_;
};

/// CSV with one row per sample, n columns, no header.
SignalMatrix load_signal_csv(const std::string& path);
void save_signal_csv(const SignalMatrix& x, const std::string& path);

/// Rank-k whitening of a symmetric PSD matrix: w * cov * w^T = I_k, built
/// from the top-k eigenpairs as diag(lambda)^(-1/2) U^T (rows ordered by
/// descending eigenvalue). pinv undoes it on the top-k subspace.
/// Throws NumericalError when the k-th eigenvalue falls below
/// 1e-12 * trace (rank deficiency).
struct Whitening {
    Matrix w;     // k x n
    Matrix pinv;  // n x k, pinv * w = projector onto the top-k subspace
};

Whitening whiten(const Matrix& cov, int rank);

/// The symmetrized canonical probe basis E_ii and E_ij + E_ji, (i <= j) in
/// lexicographic order, truncated to `count`; if count exceeds n(n+1)/2 the
/// remainder are random symmetric Gaussian probes drawn from seed.
std::vector<Matrix> default_probes(int n, int count, std::uint64_t seed);

/// Empirical fourth-order cumulant matrices Q_x(M) of the (internally
/// centered) signals against each probe:
///   Q_x(M)_ij = sum_kl cum(x_i, x_j, x_k, x_l) M_kl
/// with the zero-mean plug-in cumulant
///   cum(a,b,c,e) = E[abce] - E[ab]E[ce] - E[ac]E[be] - E[ae]E[bc].
/// Outputs are symmetrized; family size equals the probe count.
/// Rejects T < 10 n^2 (too few samples for a usable estimate).
SymmetricFamily cumulant_matrices(const SignalMatrix& x,
                                  const std::vector<Matrix>& probes);

/// Cumulant-based blind source separation: whiten the empirical covariance,
/// jointly diagonalize the whitened cumulant family, and return the
/// unmixing matrix B = Q^T W. Rows of B x have unit empirical variance.
Matrix bss_separate(const SignalMatrix& x, int probe_count, JdAlgo algo,
                    int trials, std::uint64_t seed);

/// Synthetic demo mixture: three unit-variance Laplace sources plus one
/// Gaussian channel, mixed by a Haar-random orthogonal matrix.
struct BssDemo {
    SignalMatrix x;
    Matrix mixing;  // 4 x 4
};

BssDemo make_bss_demo(int samples, std::uint64_t seed);

/// Single-topic model: omega the topic probabilities (> 0, summing to 1),
/// m the n-by-k word-given-topic matrix with column-stochastic columns.
struct TopicModel {
    std::vector<double> omega;
    Matrix m;  // n x k

    int vocab() const { return m.rows(); }
    int topics() const { return m.cols(); }
};

/// Validates and wraps; throws InvalidArgument on violated constraints.
TopicModel make_topic_model(std::vector<double> omega, Matrix m);

/// JSON {"omega": [...], "mu": [[n floats] per topic]}.
TopicModel load_topic_model(const std::string& path);
void save_topic_model(const TopicModel& model, const std::string& path);

struct TopicMoments {
    Matrix m2;                      // n x n, sum_i omega_i mu_i mu_i^T
    std::vector<Matrix> m3_slices;  // slice j = sum_i omega_i mu_i(j) mu_i mu_i^T
};

/// Population moments of the model, computed exactly.
TopicMoments topic_moments_exact(const TopicModel& model);

/// Moment inversion: whiten m2 to rank k, jointly diagonalize the whitened
/// m3 slices (plus whitened m2 itself), and map the recovered columns back
/// through the whitening pseudo-inverse. Each unwhitened column c equals
/// sqrt(omega_i) mu_i up to sign, so with z = sum(c): mu_i = c / z and
/// omega_i = z^2. Topics are returned in descending omega order.
/// Recovered entries in [-1e-8, 0) are clipped to zero; anything more
/// negative throws NumericalError.
TopicModel topic_recover(const Matrix& m2, const std::vector<Matrix>& m3_slices,
                         int k, int trials = 3,
                         std::uint64_t seed = kDefaultSeed);

/// Best alignment of recovered topics to a reference over all k!
/// permutations (k <= 8): minimizes the larger of the two max errors.
struct TopicMatch {
    std::vector<int> perm;  // est column perm[i] matches truth column i
    double max_omega_err = 0.0;
    double max_mu_err = 0.0;  // entrywise
};

TopicMatch match_topics(const TopicModel& truth, const TopicModel& estimate);

}  // namespace jd::apps
