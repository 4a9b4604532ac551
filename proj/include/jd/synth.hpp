#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "jd/family.hpp"
#include "jd/matrix.hpp"
#include "jd/rng.hpp"

namespace jd::synth {

/// How the ground-truth eigenvalues of a synthetic family are drawn.
enum class EigenvalueLaw {
    kUniform,   // uniform(0.01, 1.01) if positive_definite, else uniform(-1, 1)
    kExplicit,  // taken verbatim from FamilySpec::explicit_lambdas
};

struct FamilySpec {
    int n = 0;
    int d = 0;
    bool positive_definite = false;
    EigenvalueLaw law = EigenvalueLaw::kUniform;
    Matrix explicit_lambdas;  // n x d, used when law == kExplicit
    double noise_epsilon = 0.0;
    std::uint64_t seed = 0;
};

/// Everything the generator knows that a consumer is not supposed to:
/// the common eigenbasis and the eigenvalue table. Kept for oracle tests.
struct GroundTruth {
    OrthogonalMatrix q0;
    Matrix lambdas;  // n x d
};

struct CommutingFamily {
    SymmetricFamily family;
    GroundTruth truth;
};

/// Haar-distributed random orthogonal matrix: QR of a Gaussian matrix with
/// the R-diagonal signs folded into Q.
Matrix haar_orthogonal(int n, rng::Stream& stream);

/// Exactly commuting family A_k = Q0 diag(lambda_{:,k}) Q0^T with a common
/// Haar-random Q0. Requires spec.noise_epsilon == 0; each A_k is assembled
/// on the upper triangle, so the family is symmetric exactly.
CommutingFamily generate_commuting(const FamilySpec& spec);

/// Adds d independent symmetric Gaussian perturbations, jointly rescaled so
/// the aggregate Frobenius norm (sum_k ||E_k||_F^2)^(1/2) equals epsilon.
/// epsilon == 0 returns the family unchanged.
SymmetricFamily add_noise(const SymmetricFamily& family, double epsilon,
                          std::uint64_t seed);

/// Single-linkage clustering of eigenvalue vectors with distance bound
/// delta: the transitive closure of "within delta of a cluster member".
/// Cluster 1 contains row 1; clusters are numbered by first-member index.
struct ClusterAssignment {
    std::vector<int> k_of;  // n labels in {1..m}
    int m = 0;
    double delta = 0.0;
};

ClusterAssignment cluster_eigenvalue_vectors(const Matrix& lambdas,
                                             double delta);

/// Monte-Carlo sweep configuration for the failure-probability experiment.
struct ExperimentGrid {
    int n = 0;
    int d = 0;
    double epsilon = 0.0;
    int trials = 1;  // L
    long repeats = 0;
    std::vector<double> r_values;  // every R > 1
    std::uint64_t seed = 0;
};

struct FailureRow {
    double r = 0.0;
    int trials = 0;
    long failures = 0;
    long repeats = 0;
    double freq = 0.0;
    double ci_lo = 0.0;  // Wilson 95% interval
    double ci_hi = 0.0;
};

/// Empirical failure frequency of RJD: one commuting family plus one noise
/// realization are fixed per grid, each repeat reruns RJD with a fresh
/// seeded mu stream, and a repeat counts as a failure for a given R when
/// sqrt(L(Q)) >= R * epsilon. An epsilon of zero is floored at 1e-15.
/// Repeats run concurrently; per-repeat streams derive from (seed, repeat).
std::vector<FailureRow> failure_probability_experiment(
    const ExperimentGrid& grid);

/// Writes `R,L,failures,repeats,freq,ci_lo,ci_hi` rows, floats with 17
/// significant digits.
void write_failure_csv(const std::vector<FailureRow>& rows, std::ostream& out);

/// Least-squares slope of log(freq) against log(R-1), restricted to rows
/// with R-1 inside [rm1_lo, rm1_hi] and at least min_failures failures.
/// Empty when fewer than two rows qualify.
std::optional<double> log_log_slope(const std::vector<FailureRow>& rows,
                                    double rm1_lo, double rm1_hi,
                                    long min_failures);

}  // namespace jd::synth
