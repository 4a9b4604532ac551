#include "doctest.h"

#include <vector>

#include "jd/errors.hpp"
#include "jd/kernels.hpp"
#include "jd/rng.hpp"
#include "test_util.hpp"

using namespace jd;

namespace {

Matrix random_matrix(int r, int c, rng::Stream& s) {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = s.normal();
    return m;
}

}  // namespace

// The parallel kernels fix the per-element accumulation order, so their
// results must match the serial reference bit for bit at any size,
// including sizes beyond the parallel threshold.
TEST_CASE("parallel kernels match the serial reference exactly") {
    rng::Stream s(31);
    for (int n : {3, 17, 40, 64}) {
        const Matrix a = random_matrix(n, n, s);
        const Matrix b = random_matrix(n, n, s);
        CHECK(kernels::matmul(a, b) == kernels::ref::matmul(a, b));
        CHECK(kernels::matmul_tn(a, b) == kernels::ref::matmul_tn(a, b));
        CHECK(kernels::congruence(a, b) == kernels::ref::congruence(a, b));
    }

    for (int n : {5, 40}) {
        std::vector<Matrix> fam;
        for (int k = 0; k < 6; ++k)
            fam.push_back(testutil::random_symmetric(n, s));
        std::vector<double> mu = s.normal_vector(6);
        CHECK(kernels::lincomb_symmetric(fam, mu) ==
              kernels::ref::lincomb_symmetric(fam, mu));

        rng::Stream hs(7);
        const Matrix q = synth::haar_orthogonal(n, hs);
        CHECK(kernels::family_column_residuals(fam, q) ==
              kernels::ref::family_column_residuals(fam, q));
        CHECK(kernels::diag_congruence_sumsq(fam, q) ==
              kernels::ref::diag_congruence_sumsq(fam, q));
    }
}

TEST_CASE("moment sums match the reference across chunk boundaries") {
    rng::Stream s(77);
    // Sample counts straddling multiples of the chunk size.
    for (int t : {100, kernels::kMomentChunk, kernels::kMomentChunk + 1,
                  3 * kernels::kMomentChunk + 17}) {
        const Matrix x = random_matrix(t, 3, s);
        CHECK(kernels::moment2_sums(x) == kernels::ref::moment2_sums(x));
        CHECK(kernels::moment4_sums(x) == kernels::ref::moment4_sums(x));
    }
}

TEST_CASE("lincomb output is symmetric exactly") {
    rng::Stream s(5);
    std::vector<Matrix> fam;
    for (int k = 0; k < 4; ++k)
        fam.push_back(testutil::random_symmetric(9, s));
    const Matrix m = kernels::lincomb_symmetric(fam, s.normal_vector(4));
    CHECK(asymmetry_norm(m) == 0.0);
}

TEST_CASE("kernel shape checks throw") {
    Matrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS(kernels::matmul(a, b), InvalidArgument);
    CHECK_THROWS_AS(
        kernels::lincomb_symmetric({Matrix(2, 2)}, {1.0, 2.0}),
        InvalidArgument);
}
