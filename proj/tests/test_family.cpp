#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jd/errors.hpp"
#include "jd/family.hpp"
#include "jd/kernels.hpp"
#include "test_util.hpp"

using namespace jd;

namespace {

std::filesystem::path tmp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "jd_family_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("load parses a simple diagonal family") {
    const auto p = tmp_file("diag.json");
    write_text(p, R"({"n": 2, "d": 1, "matrices": [[1, 0, 0, 2]]})");
    const SymmetricFamily f = load_family(p.string());
    CHECK(f.n() == 2);
    CHECK(f.d() == 1);
    CHECK(f.matrix(0)(0, 0) == 1.0);
    CHECK(f.matrix(0)(1, 1) == 2.0);
}

TEST_CASE("load rejects malformed input") {
    const auto p = tmp_file("bad.json");
    write_text(p, "not json at all {");
    CHECK_THROWS_AS(load_family(p.string()), ParseError);

    // d=2 but matrices of differing n (4 vs 9 entries).
    write_text(p, R"({"n": 2, "d": 2, "matrices": [[1,0,0,1],[1,0,0,0,1,0,0,0,1]]})");
    CHECK_THROWS_AS(load_family(p.string()), ParseError);

    CHECK_THROWS_AS(load_family("/no/such/file.json"), IoError);
}

TEST_CASE("mild asymmetry is symmetrized, gross asymmetry rejected") {
    // Relative asymmetry ~ 1e-9: accepted and replaced by (A + A^T) / 2.
    const auto p = tmp_file("asym.json");
    write_text(p, R"({"n": 2, "d": 1, "matrices": [[1, 1e-9, 0, 1]]})");
    const SymmetricFamily f = load_family(p.string());
    CHECK(f.matrix(0)(0, 1) == 0.5e-9);
    CHECK(f.matrix(0)(1, 0) == 0.5e-9);

    write_text(p, R"({"n": 2, "d": 1, "matrices": [[1, 0.1, 0, 1]]})");
    CHECK_THROWS_AS(load_family(p.string()), InvalidArgument);
}

TEST_CASE("save/load round-trips every bit") {
    rng::Stream s(404);
    const SymmetricFamily f = testutil::random_family(10, 10, s);
    const auto p = tmp_file("roundtrip.json");
    save_family(f, p.string());
    const SymmetricFamily g = load_family(p.string());
    REQUIRE(g.n() == f.n());
    REQUIRE(g.d() == f.d());
    double max_rel = 0.0;
    for (int k = 0; k < f.d(); ++k)
        for (std::size_t i = 0; i < f.matrix(k).size(); ++i) {
            const double a = f.matrix(k).data()[i];
            const double b = g.matrix(k).data()[i];
            CHECK(a == b);  // bit-faithful via 17 significant digits
            if (a != 0.0) max_rel = std::max(max_rel, std::abs(a - b) / std::abs(a));
        }
    CHECK(max_rel <= 1e-15);
}

TEST_CASE("save to an unwritable path fails") {
    rng::Stream s(1);
    const SymmetricFamily f = testutil::random_family(2, 1, s);
    CHECK_THROWS_AS(save_family(f, "/no/such/dir/out.json"), IoError);
}

TEST_CASE("commutator norms") {
    SUBCASE("diagonal matrices commute") {
        Matrix a(2, 2), b(2, 2);
        a(0, 0) = 1;
        a(1, 1) = 2;
        b(0, 0) = 3;
        b(1, 1) = 4;
        const Matrix c = commutator_norms(SymmetricFamily({a, b}));
        CHECK(c(0, 1) == 0.0);
        CHECK(c(0, 0) == 0.0);
    }
    SUBCASE("hand-computed 2x2 pair") {
        // A1 = [[0,1],[1,0]], A2 = diag(1,-1): [A1,A2] = [[0,-2],[2,0]],
        // Frobenius norm 2*sqrt(2).
        Matrix a(2, 2), b(2, 2);
        a(0, 1) = 1;
        a(1, 0) = 1;
        b(0, 0) = 1;
        b(1, 1) = -1;
        const Matrix c = commutator_norms(SymmetricFamily({a, b}));
        CHECK(c(0, 1) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(c(1, 0) == c(0, 1));
    }
    SUBCASE("d=1 gives the 1x1 zero matrix") {
        rng::Stream s(2);
        const Matrix c =
            commutator_norms(testutil::random_family(4, 1, s));
        CHECK(c.rows() == 1);
        CHECK(c(0, 0) == 0.0);
    }
    SUBCASE("invariant under joint orthogonal conjugation") {
        rng::Stream s(3);
        const SymmetricFamily f = testutil::random_family(6, 3, s);
        rng::Stream hs(4);
        const Matrix q = synth::haar_orthogonal(6, hs);
        std::vector<Matrix> conj;
        for (int k = 0; k < f.d(); ++k)
            conj.push_back(symmetrize(kernels::congruence(q, f.matrix(k))));
        const Matrix c0 = commutator_norms(f);
        const Matrix c1 = commutator_norms(SymmetricFamily(std::move(conj)));
        CHECK(frobenius_distance(c0, c1) <= 1e-10 * frobenius_norm(c0));
    }
}

TEST_CASE("random linear combination") {
    Matrix a = Matrix::identity(2);
    Matrix b(2, 2);
    b(0, 0) = 1;
    b(1, 1) = 2;
    const SymmetricFamily f({a, b});

    SUBCASE("basis vector selects a member") {
        const Matrix m = random_linear_combination(f, {1.0, 0.0});
        CHECK(frobenius_distance(m, a) == 0.0);
    }
    SUBCASE("zero coefficients give the zero matrix") {
        const Matrix m = random_linear_combination(f, {0.0, 0.0});
        CHECK(frobenius_norm(m) == 0.0);
    }
    SUBCASE("I + diag(1,2) = diag(2,3)") {
        const Matrix m = random_linear_combination(f, {1.0, 1.0});
        CHECK(m(0, 0) == 2.0);
        CHECK(m(1, 1) == 3.0);
        CHECK(m(0, 1) == 0.0);
    }
    SUBCASE("length mismatch throws") {
        CHECK_THROWS_AS(random_linear_combination(f, {1.0}), InvalidArgument);
    }
    SUBCASE("output is symmetric exactly and linear") {
        rng::Stream s(5);
        const SymmetricFamily g = testutil::random_family(7, 3, s);
        const auto mu = s.normal_vector(3);
        const auto nu = s.normal_vector(3);
        const Matrix m = random_linear_combination(g, mu);
        CHECK(asymmetry_norm(m) == 0.0);

        const double alpha = 0.7, beta = -1.3;
        std::vector<double> combo(3);
        for (int k = 0; k < 3; ++k) combo[k] = alpha * mu[k] + beta * nu[k];
        const Matrix lhs = random_linear_combination(g, combo);
        const Matrix rhs_a = random_linear_combination(g, mu);
        const Matrix rhs_b = random_linear_combination(g, nu);
        double max_rel = 0.0;
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) {
                const double want = alpha * rhs_a(i, j) + beta * rhs_b(i, j);
                const double scale = std::max(1e-30, std::abs(want));
                max_rel = std::max(max_rel, std::abs(lhs(i, j) - want) / scale);
            }
        CHECK(max_rel <= 1e-13);
    }
}

TEST_CASE("orthogonal matrix type verifies its invariant") {
    CHECK_NOTHROW(OrthogonalMatrix(Matrix::identity(4)));
    Matrix bad = Matrix::identity(4);
    bad(0, 0) = 1.5;
    CHECK_THROWS_AS(OrthogonalMatrix(bad), InvalidArgument);
    CHECK_THROWS_AS(NoiseBudget(-1.0), InvalidArgument);
    CHECK(NoiseBudget(0.0).epsilon == 0.0);
}
