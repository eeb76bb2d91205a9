#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "completion.hpp"
#include "errors.hpp"
#include "matrix.hpp"

using namespace svtail;

TEST_SUITE("completion") {

TEST_CASE("demo matrix shape and fixed entries") {
    DenseMatrix m = demo_matrix();
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 4);
    CHECK(m(0, 0) == 2.0);
    CHECK(m(0, 3) == 1.0);
    CHECK(m(1, 0) == 1.0);
    CHECK(m(2, 2) == 2.0);
}

TEST_CASE("problem validation") {
    CompletionProblem p = demo_problem(CompletionNorm::trace, 0);
    CHECK_NOTHROW(p.validate());

    CompletionProblem bad = p;
    bad.holes.clear();
    CHECK_THROWS_AS(bad.validate(), UsageError);

    bad = p;
    bad.holes.push_back({0, 0});
    bad.holes.push_back({0, 1});
    CHECK_THROWS_AS(bad.validate(), UsageError); // three holes

    bad = p;
    bad.holes[0] = {5, 0};
    CHECK_THROWS_AS(bad.validate(), UsageError); // out of bounds

    bad = p;
    bad.search_lo = 3.0;
    bad.search_hi = 1.0;
    CHECK_THROWS_AS(bad.validate(), UsageError);

    // A degenerate box (single point) is allowed.
    bad = p;
    bad.search_lo = bad.search_hi = 2.0;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("surface covers the grid in row-major order") {
    CompletionProblem p = demo_problem(CompletionNorm::trace, 0);
    std::vector<SurfacePoint> surface = norm_surface(p, 0.05);
    // 41 points per axis over [1, 3] at step 0.05.
    REQUIRE(surface.size() == 41 * 41);
    CHECK(surface[0].values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(surface[0].values[1] == doctest::Approx(1.0).epsilon(1e-12));
    // Second hole is the fast axis.
    CHECK(surface[1].values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(surface[1].values[1] == doctest::Approx(1.05).epsilon(1e-9));
    CHECK(surface[41].values[0] == doctest::Approx(1.05).epsilon(1e-9));
    CHECK(surface.back().values[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(surface.back().values[1] == doctest::Approx(3.0).epsilon(1e-9));

    // Every reported norm is the trace norm of the corresponding completion.
    DenseMatrix filled = p.base;
    filled(p.holes[0].first, p.holes[0].second) = surface[1].values[0];
    filled(p.holes[1].first, p.holes[1].second) = surface[1].values[1];
    CHECK(surface[1].norm == doctest::Approx(trace_norm(filled)).epsilon(1e-12));
}

TEST_CASE("single-point box degenerates cleanly") {
    CompletionProblem p = demo_problem(CompletionNorm::trace, 0, 1.8377, 1.8377);
    // Both holes pinned to one value each: a single surface point.
    p.search_lo = p.search_hi = 1.8377;
    std::vector<SurfacePoint> surface = norm_surface(p, 0.05);
    REQUIRE(surface.size() == 1);
}

TEST_CASE("norm value at a published completion point") {
    DenseMatrix filled = demo_matrix();
    filled(1, 2) = 1.8377;
    filled(2, 3) = 1.4248;
    CHECK(std::fabs(trace_norm(filled) - 6.4538) < 1e-3);
}

TEST_CASE("trace-norm search lands on the flat valley floor") {
    CompletionProblem p = demo_problem(CompletionNorm::trace, 0);
    MinimizerResult r = find_minimizer(p, 0.05, 3);

    // Values frozen from an independent high-precision run of the same
    // protocol (coarse 0.05 over [1,3]^2, three tenfold refinements).
    CHECK(std::fabs(r.values[0] - 1.8392) < 1e-3);
    CHECK(std::fabs(r.values[1] - 1.42715) < 1e-3);
    CHECK(std::fabs(r.norm - 6.453803) < 1e-4);
    REQUIRE(r.sigma.size() == 3);
    CHECK(std::fabs(r.sigma[0] - 5.124743) < 1e-3);
    CHECK(std::fabs(r.sigma[1] - 1.034078) < 1e-3);
    CHECK(std::fabs(r.sigma[2] - 0.294983) < 1e-3);

    // The reported norm is the norm of the reported completion.
    DenseMatrix filled = p.base;
    filled(1, 2) = r.values[0];
    filled(2, 3) = r.values[1];
    CHECK(std::fabs(r.norm - trace_norm(filled)) < 1e-9);
}

TEST_CASE("tail-norm search recovers the rank-one completion") {
    CompletionProblem p = demo_problem(CompletionNorm::tail, 2);
    MinimizerResult r = find_minimizer(p, 0.05, 3);
    CHECK(std::fabs(r.values[0] - 2.0) < 0.005);
    CHECK(std::fabs(r.values[1] - 2.0) < 0.005);
    REQUIRE(r.sigma.size() == 3);
    CHECK(std::fabs(r.sigma[0] - 5.3549) < 1e-3);
    CHECK(std::fabs(r.sigma[1] - 1.1512) < 1e-3);
    CHECK(std::fabs(r.sigma[2]) < 1e-3);
    // Beyond the protected head the spectrum is numerically zero.
    CHECK(r.sigma[2] <= 1e-9 * r.sigma[0]);
}

TEST_CASE("single-hole rank-one completion") {
    CompletionProblem p{
        DenseMatrix{{1, 2}, {2, 5}}, {{1, 1}}, 1.0, 4.0, CompletionNorm::tail, 1};
    MinimizerResult r = find_minimizer(p, 0.05, 3);
    // sigma_2 vanishes exactly when the missing corner makes the matrix
    // rank one: (1,2;2,4).
    CHECK(std::fabs(r.values[0] - 4.0) < 0.005);
    CHECK(r.sigma[1] <= 1e-6 * r.sigma[0]);
}

TEST_CASE("flat tail objective keeps the first grid point") {
    // theta >= min(rows, cols) makes the tail empty, so the objective is
    // identically zero and the tie-break must keep the first point in
    // row-major order: the box corner (lo, lo).
    CompletionProblem p = demo_problem(CompletionNorm::tail, 3);
    std::vector<SurfacePoint> surface = norm_surface(p, 0.5);
    for (const SurfacePoint& pt : surface) {
        CHECK(pt.norm == 0.0);
    }
    MinimizerResult r = find_minimizer(p, 0.5, 2);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("refinement stays inside the search box") {
    CompletionProblem p = demo_problem(CompletionNorm::trace, 0, 1.0, 1.2);
    MinimizerResult r = find_minimizer(p, 0.05, 3);
    for (double v : r.values) {
        CHECK(v >= 1.0 - 1e-12);
        CHECK(v <= 1.2 + 1e-12);
    }
}

} // TEST_SUITE("completion")
