#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "rpboost/errors.hpp"
#include "rpboost/linalg.hpp"
#include "rpboost/rng.hpp"
#include "support.hpp"

using namespace rpboost;

namespace {

DenseMatrix from_rows(std::size_t rows, std::size_t cols,
                      std::vector<double> data) {
    return DenseMatrix(rows, cols, std::move(data));
}

}  // namespace

TEST_CASE("matmul identity leaves the operand unchanged") {
    const DenseMatrix a = from_rows(2, 2, {1, 2, 3, 4});
    const DenseMatrix out = matmul(DenseMatrix::identity(2), a);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(out(r, c) == a(r, c));
        }
    }
}

TEST_CASE("matmul 1x2 times 2x1 is a dot product") {
    const DenseMatrix out =
        matmul(from_rows(1, 2, {1, 2}), from_rows(2, 1, {3, 4}));
    CHECK(out.rows() == 1);
    CHECK(out.cols() == 1);
    CHECK(out(0, 0) == 11.0);
}

TEST_CASE("matmul hand-multiplication oracle") {
    const DenseMatrix out =
        matmul(from_rows(2, 2, {1, 0, 0, 2}), from_rows(2, 2, {0, 1, 1, 0}));
    CHECK(out(0, 0) == 0.0);
    CHECK(out(0, 1) == 1.0);
    CHECK(out(1, 0) == 2.0);
    CHECK(out(1, 1) == 0.0);
}

TEST_CASE("matmul dimension mismatch names both shapes") {
    const DenseMatrix a(3, 4);
    const DenseMatrix b(5, 2);
    try {
        matmul(a, b);
        FAIL("expected DimensionError");
    } catch (const DimensionError& e) {
        const std::string what = e.what();
        CHECK(what.find("3x4") != std::string::npos);
        CHECK(what.find("5x2") != std::string::npos);
    }
}

TEST_CASE("gram_weighted identity and diagonal weighting") {
    const DenseMatrix z = DenseMatrix::identity(2);
    const DenseMatrix g1 = gram_weighted(z, {1, 1});
    CHECK(g1(0, 0) == 1.0);
    CHECK(g1(0, 1) == 0.0);
    CHECK(g1(1, 1) == 1.0);

    const DenseMatrix g2 = gram_weighted(z, {2, 3});
    CHECK(g2(0, 0) == 2.0);
    CHECK(g2(1, 1) == 3.0);
    CHECK(g2(0, 1) == 0.0);
}

TEST_CASE("gram_weighted explicit hand sum") {
    const DenseMatrix z = from_rows(2, 2, {1, 1, 1, -1});
    const DenseMatrix g = gram_weighted(z, {1, 1});
    CHECK(g(0, 0) == 2.0);
    CHECK(g(0, 1) == 0.0);
    CHECK(g(1, 0) == 0.0);
    CHECK(g(1, 1) == 2.0);
}

TEST_CASE("gram_weighted rejects negative weights and bad lengths") {
    const DenseMatrix z = DenseMatrix::identity(2);
    CHECK_THROWS_AS(gram_weighted(z, {1, -1}), ValueError);
    CHECK_THROWS_AS(gram_weighted(z, {1, 1, 1}), DimensionError);
}

TEST_CASE("gram_weighted with unit weights equals Z^T Z") {
    Rng rng(101);
    const DenseMatrix z = [&] {
        DenseMatrix m(7, 4);
        for (std::size_t r = 0; r < 7; ++r) {
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = rng.normal(0, 1);
        }
        return m;
    }();
    const DenseMatrix g = gram_weighted(z, Vector(7, 1.0));
    const DenseMatrix ref = matmul(transpose(z), z);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(std::abs(g(r, c) - ref(r, c)) <= 1e-12);
        }
    }
}

TEST_CASE("gram_weighted output is bit-for-bit symmetric") {
    Rng rng(77);
    DenseMatrix z(9, 5);
    for (std::size_t r = 0; r < 9; ++r) {
        for (std::size_t c = 0; c < 5; ++c) z(r, c) = rng.normal(0, 2.5);
    }
    const Vector w = testsupport::random_weights(rng, 9);
    const DenseMatrix g = gram_weighted(z, w);
    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 5; ++c) {
            CHECK(g(r, c) == g(c, r));  // exact, not approximate
        }
    }
}

TEST_CASE("solve_spd identity and diagonal systems") {
    const Vector x1 = solve_spd(DenseMatrix::identity(3), {1, 2, 3});
    CHECK(x1[0] == doctest::Approx(1).epsilon(1e-14));
    CHECK(x1[1] == doctest::Approx(2).epsilon(1e-14));
    CHECK(x1[2] == doctest::Approx(3).epsilon(1e-14));

    const Vector x2 = solve_spd(from_rows(2, 2, {2, 0, 0, 4}), {2, 8});
    CHECK(x2[0] == doctest::Approx(1).epsilon(1e-14));
    CHECK(x2[1] == doctest::Approx(2).epsilon(1e-14));
}

TEST_CASE("solve_spd verified by multiplying back") {
    const DenseMatrix a = from_rows(2, 2, {4, 2, 2, 3});
    const Vector x = solve_spd(a, {6, 5});
    CHECK(x[0] == doctest::Approx(1).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1).epsilon(1e-12));
    const Vector back = matvec(a, x);
    CHECK(back[0] == doctest::Approx(6).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(5).epsilon(1e-12));
}

TEST_CASE("solve_spd diagonal equals elementwise division") {
    Rng rng(5);
    DenseMatrix a(6, 6);
    Vector rhs(6);
    for (std::size_t i = 0; i < 6; ++i) {
        a(i, i) = 0.5 + rng.uniform() * 10.0;
        rhs[i] = rng.normal(0, 1);
    }
    const Vector x = solve_spd(a, rhs);
    for (std::size_t i = 0; i < 6; ++i) {
        const double expect = rhs[i] / a(i, i);
        CHECK(std::abs(x[i] - expect) <=
              1e-14 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("solve_spd random SPD residual bound") {
    Rng rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.below(30);
        DenseMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.normal(0, 1);
        }
        // M^T M + I is SPD by construction.
        DenseMatrix a = matmul(transpose(m), m);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
        // Symmetrize exactly (matmul of transpose pairs can differ in the
        // last ulp across the diagonal).
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = r + 1; c < n; ++c) a(c, r) = a(r, c);
        }
        Vector rhs(n);
        for (double& v : rhs) v = rng.normal(0, 3);

        const Vector x = solve_spd(a, rhs);
        const Vector back = matvec(a, x);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resid = std::max(resid, std::abs(back[i] - rhs[i]));
        }
        CHECK(resid <= 1e-8 * (1.0 + max_abs(rhs)));
    }
}

TEST_CASE("solve_spd rejects indefinite, asymmetric and misshapen input") {
    CHECK_THROWS_AS(solve_spd(from_rows(2, 2, {1, 2, 2, 1}), {1, 1}),
                    NotPositiveDefinite);  // eigenvalues 3 and -1
    CHECK_THROWS_AS(solve_spd(from_rows(2, 2, {0, 0, 0, 0}), {1, 1}),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(solve_spd(from_rows(2, 2, {1, 5, 0, 1}), {1, 1}),
                    ValueError);  // not symmetric
    CHECK_THROWS_AS(solve_spd(DenseMatrix(2, 3), {1, 1}), DimensionError);
    CHECK_THROWS_AS(solve_spd(DenseMatrix::identity(2), {1, 1, 1}),
                    DimensionError);
}

TEST_CASE("add_ridge shifts the diagonal") {
    const DenseMatrix a1 = add_ridge(DenseMatrix(2, 2), 0.3);
    CHECK(a1(0, 0) == 0.3);
    CHECK(a1(1, 1) == 0.3);
    CHECK(a1(0, 1) == 0.0);

    const DenseMatrix a2 = add_ridge(DenseMatrix::identity(2), 0.0);
    CHECK(a2(0, 0) == 1.0);
    CHECK(a2(0, 1) == 0.0);

    const DenseMatrix a3 = add_ridge(from_rows(2, 2, {1, 2, 2, 1}), 1.0);
    CHECK(a3(0, 0) == 2.0);
    CHECK(a3(0, 1) == 2.0);
    CHECK(a3(1, 0) == 2.0);
    CHECK(a3(1, 1) == 2.0);
}

TEST_CASE("add_ridge validates shape and sign") {
    CHECK_THROWS_AS(add_ridge(DenseMatrix(2, 3), 1.0), DimensionError);
    CHECK_THROWS_AS(add_ridge(DenseMatrix::identity(2), -0.1), ValueError);
}

TEST_CASE("transpose, matvec, tmatvec, dot basics") {
    const DenseMatrix a = from_rows(2, 3, {1, 2, 3, 4, 5, 6});
    const DenseMatrix at = transpose(a);
    CHECK(at.rows() == 3);
    CHECK(at.cols() == 2);
    CHECK(at(2, 1) == 6.0);

    const Vector mv = matvec(a, {1, 0, -1});
    CHECK(mv[0] == -2.0);
    CHECK(mv[1] == -2.0);

    const Vector tv = tmatvec(a, {1, 1});
    CHECK(tv[0] == 5.0);
    CHECK(tv[1] == 7.0);
    CHECK(tv[2] == 9.0);

    CHECK(dot({1, 2, 3}, {4, 5, 6}) == 32.0);
    CHECK_THROWS_AS(matvec(a, {1, 0}), DimensionError);
    CHECK_THROWS_AS(tmatvec(a, {1, 0, 0}), DimensionError);
    CHECK_THROWS_AS(dot({1.0}, {1.0, 2.0}), DimensionError);
}

TEST_CASE("all_finite flags NaN and infinity") {
    DenseMatrix a(2, 2);
    CHECK(a.all_finite());
    a(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(a.all_finite());
    a(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(a.all_finite());
}

TEST_CASE("solve_spd explicit-inverse cross-check") {
    Rng rng(999);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.below(10);
        DenseMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.normal(0, 1);
        }
        DenseMatrix a = matmul(transpose(m), m);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = r + 1; c < n; ++c) a(c, r) = a(r, c);
        }
        Vector rhs(n);
        for (double& v : rhs) v = rng.normal(0, 1);

        const Vector x = solve_spd(a, rhs);
        const DenseMatrix inv = testsupport::gauss_jordan_inverse(a);
        const Vector ref = matvec(inv, rhs);
        CHECK(testsupport::max_abs_diff(x, ref) <= 1e-8);
    }
}
