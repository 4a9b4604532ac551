#include "doctest.h"

#include "jd/errors.hpp"
#include "jd/matrix.hpp"
#include "jd/rng.hpp"

using namespace jd;

TEST_CASE("transpose and frobenius basics") {
    Matrix m(2, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(1, 0) = 4;
    m(1, 1) = 5;
    m(1, 2) = 6;
    const Matrix t = transpose(m);
    CHECK(t.rows() == 3);
    CHECK(t(2, 1) == 6);
    CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(91.0)));
    CHECK(frobenius_distance(m, m) == 0.0);
}

TEST_CASE("symmetrize and asymmetry norm") {
    Matrix m(2, 2);
    m(0, 1) = 1.0;
    const Matrix s = symmetrize(m);
    CHECK(s(0, 1) == 0.5);
    CHECK(s(1, 0) == 0.5);
    CHECK(asymmetry_norm(s) == 0.0);
    CHECK(asymmetry_norm(m) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(symmetrize(Matrix(2, 3)), InvalidArgument);
}

TEST_CASE("identity and max_abs") {
    const Matrix i3 = Matrix::identity(3);
    CHECK(frobenius_norm(i3) == doctest::Approx(std::sqrt(3.0)));
    CHECK(max_abs(i3) == 1.0);
}
