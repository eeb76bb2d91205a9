#include <doctest.h>

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "test_helpers.hpp"

using namespace svtail;
namespace helpers = svtail::testing;

TEST_SUITE("matrix") {

TEST_CASE("construction and validation") {
    DenseMatrix zero(2, 3);
    CHECK(zero.rows() == 2);
    CHECK(zero.cols() == 3);
    CHECK(zero(1, 2) == 0.0);

    DenseMatrix lit{{1, 2}, {3, 4}};
    CHECK(lit(0, 1) == 2.0);
    CHECK(lit(1, 0) == 3.0);

    CHECK_THROWS_AS(DenseMatrix(0, 3), UsageError);
    CHECK_THROWS_AS(DenseMatrix(3, 0), UsageError);
    CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), UsageError);
    CHECK_THROWS_AS(
        DenseMatrix(1, 2, std::vector<double>{1.0, std::nan("")}), UsageError);
    CHECK_THROWS_AS((DenseMatrix{{1, 2}, {3}}), UsageError);
}

TEST_CASE("identity and diag") {
    DenseMatrix eye = DenseMatrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(eye(i, j) == (i == j ? 1.0 : 0.0));
        }
    }
    DenseMatrix d = DenseMatrix::diag({2, 5, 1});
    CHECK(d(0, 0) == 2.0);
    CHECK(d(1, 1) == 5.0);
    CHECK(d(2, 2) == 1.0);
    CHECK(d(0, 1) == 0.0);
}

TEST_CASE("arithmetic") {
    DenseMatrix a{{1, 2}, {3, 4}};
    DenseMatrix b{{5, 6}, {7, 8}};

    DenseMatrix sum = add(a, b);
    CHECK(sum(0, 0) == 6.0);
    CHECK(sum(1, 1) == 12.0);

    DenseMatrix diff = subtract(b, a);
    CHECK(diff(0, 0) == 4.0);
    CHECK(diff(1, 1) == 4.0);

    DenseMatrix prod = multiply(a, b);
    CHECK(prod(0, 0) == 19.0);
    CHECK(prod(0, 1) == 22.0);
    CHECK(prod(1, 0) == 43.0);
    CHECK(prod(1, 1) == 50.0);

    DenseMatrix twice = scale(a, 2.0);
    CHECK(twice(1, 0) == 6.0);

    DenseMatrix at = transpose(a);
    CHECK(at(0, 1) == 3.0);
    CHECK(at(1, 0) == 2.0);

    CHECK(max_abs_diff(a, b) == 4.0);
    CHECK_THROWS_AS(multiply(a, DenseMatrix(3, 2)), UsageError);
    CHECK_THROWS_AS(add(a, DenseMatrix(3, 2)), UsageError);
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(DenseMatrix{{3, 4}}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(frobenius_norm(DenseMatrix::identity(2)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(frobenius_norm(DenseMatrix(4, 7)) == 0.0);
}

TEST_CASE("svd of diagonal matrices") {
    SvdResult eye = svd(DenseMatrix::identity(3));
    REQUIRE(eye.sigma.size() == 3);
    for (double s : eye.sigma) {
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }

    SvdResult d = svd(DenseMatrix::diag({2, 5, 1}));
    REQUIRE(d.sigma.size() == 3);
    CHECK(d.sigma[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(d.sigma[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.sigma[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd singular values of a fixed 3x4 matrix") {
    DenseMatrix m{{2, 1, 2, 1}, {1, 1, 2, 2}, {1, 1, 2, 2}};
    SvdResult dec = svd(m);
    REQUIRE(dec.sigma.size() == 3);
    CHECK(std::fabs(dec.sigma[0] - 5.3549) < 1e-3);
    CHECK(std::fabs(dec.sigma[1] - 1.1512) < 1e-3);
    CHECK(std::fabs(dec.sigma[2] - 0.0) < 1e-9);
}

TEST_CASE("svd reconstructs its input") {
    Rng rng(20240901);
    for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 1}, {2, 3}, {3, 2}, {5, 5}, {10, 4}, {4, 10}, {50, 50}}) {
        DenseMatrix a = helpers::random_matrix(rng, rows, cols);
        SvdResult dec = svd(a);
        CHECK(max_abs_diff(svd_reconstruct(dec), a) < 1e-8);
        for (std::size_t i = 0; i + 1 < dec.sigma.size(); ++i) {
            CHECK(dec.sigma[i] >= dec.sigma[i + 1]);
        }
        for (double s : dec.sigma) {
            CHECK(s >= 0.0);
        }
    }
}

TEST_CASE("svd factors have orthonormal columns") {
    Rng rng(77);
    DenseMatrix a = helpers::random_matrix(rng, 6, 4);
    SvdResult dec = svd(a);
    DenseMatrix utu = multiply(transpose(dec.u), dec.u);
    DenseMatrix vtv = multiply(transpose(dec.v), dec.v);
    CHECK(max_abs_diff(utu, DenseMatrix::identity(4)) < 1e-10);
    CHECK(max_abs_diff(vtv, DenseMatrix::identity(4)) < 1e-10);
}

TEST_CASE("svd handles rank deficiency") {
    // Rank-1 outer product with an exactly zero second singular value.
    DenseMatrix a{{1, 2}, {2, 4}};
    SvdResult dec = svd(a);
    REQUIRE(dec.sigma.size() == 2);
    CHECK(dec.sigma[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(dec.sigma[1] < 1e-12);
    CHECK(max_abs_diff(svd_reconstruct(dec), a) < 1e-10);
    // Orthonormality must survive the zero-column completion.
    DenseMatrix utu = multiply(transpose(dec.u), dec.u);
    CHECK(max_abs_diff(utu, DenseMatrix::identity(2)) < 1e-10);

    SvdResult z = svd(DenseMatrix(3, 2));
    CHECK(z.sigma[0] == 0.0);
    CHECK(z.sigma[1] == 0.0);
    DenseMatrix ztz = multiply(transpose(z.u), z.u);
    CHECK(max_abs_diff(ztz, DenseMatrix::identity(2)) < 1e-12);
}

TEST_CASE("singular values are invariant under orthogonal factors") {
    Rng rng(424242);
    std::vector<double> spectrum{3.5, 1.25, 0.5, 0.125};
    DenseMatrix a = helpers::matrix_with_spectrum(rng, spectrum);
    SvdResult dec = svd(a);
    REQUIRE(dec.sigma.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::fabs(dec.sigma[i] - spectrum[i]) < 1e-9);
    }
}

TEST_CASE("tail sums and trace norm") {
    DenseMatrix d = DenseMatrix::diag({3, 2, 1});
    CHECK(tail_singular_sum(d, 0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(tail_singular_sum(d, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(tail_singular_sum(d, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tail_singular_sum(d, 3) == 0.0);
    CHECK(tail_singular_sum(d, 10) == 0.0);
    CHECK(trace_norm(d) == doctest::Approx(6.0).epsilon(1e-12));

    // trace_norm and the theta=0 tail run the same code path, so they agree
    // bitwise, not just approximately.
    Rng rng(5150);
    DenseMatrix a = helpers::random_matrix(rng, 4, 3);
    CHECK(trace_norm(a) == tail_singular_sum(a, 0));

    // The tail sum never grows as the protected head grows.
    double prev = tail_singular_sum(a, 0);
    for (std::size_t theta = 1; theta <= 3; ++theta) {
        double cur = tail_singular_sum(a, theta);
        CHECK(cur <= prev);
        prev = cur;
    }

    // Sum over an explicit sigma vector matches the matrix overload.
    SvdResult dec = svd(a);
    CHECK(tail_singular_sum(dec.sigma, 1) == tail_singular_sum(a, 1));
}

TEST_CASE("trace norm of the completed 3x4 example") {
    DenseMatrix m{{2, 1, 2, 1}, {1, 1, 1.8377, 2}, {1, 1, 2, 1.4248}};
    CHECK(std::fabs(trace_norm(m) - 6.4538) < 1e-3);
}

} // TEST_SUITE("matrix")
