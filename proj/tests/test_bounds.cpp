#include <doctest.h>

#include <cmath>
#include <cstddef>

#include "bounds.hpp"
#include "errors.hpp"
#include "matrix.hpp"

using namespace svtail;

namespace {

// delta values that make ln(2/delta) come out as small integers, so the
// expected numbers below are hand arithmetic.
const double kDeltaLog1 = 2.0 / std::exp(1.0); // ln(2/delta) = 1
const double kDeltaLog2 = 2.0 / std::exp(2.0); // ln(2/delta) = 2

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("global gap hand values") {
    BoundInputs in;
    in.n = 4;
    in.delta = kDeltaLog2;
    in.rademacher = 0.0;
    // sqrt(2 * 2 / 4) = 1
    CHECK(global_bound_gap(in) == doctest::Approx(1.0).epsilon(1e-12));

    in.rademacher = 0.25;
    CHECK(global_bound_gap(in) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("local gap hand values") {
    BoundInputs in;
    in.n = 3;
    in.delta = kDeltaLog1;
    in.r = 0.0;
    in.rademacher = 0.0;
    // 0 + 0 + 3 * 1 / 3 = 1
    CHECK(local_bound_gap(in) == doctest::Approx(1.0).epsilon(1e-12));

    in.n = 4;
    in.r = 0.5;
    // sqrt(8 * 0.5 * 1 / 4) + 3 * 1 / 4 = 1 + 0.75
    CHECK(local_bound_gap(in) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("local complexity hand value") {
    BoundInputs in;
    in.n = 100;
    in.r = 1.0;
    in.theta = 2;
    in.tail_sum = 0.5;
    // sqrt(2/100) + 0.5/10
    CHECK(local_rademacher_bound(in) ==
          doctest::Approx(std::sqrt(0.02) + 0.05).epsilon(1e-9));
    CHECK(std::fabs(local_rademacher_bound(in) - 0.1914214) < 1e-6);
}

TEST_CASE("trace complexity hand value") {
    BoundInputs in;
    in.n = 9;
    in.trace_bound = 3.0;
    CHECK(trace_rademacher_bound(in) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("input validation") {
    BoundInputs in;
    in.n = 0;
    CHECK_THROWS_AS(in.validate(), UsageError);
    in = BoundInputs{};
    in.delta = 0.0;
    CHECK_THROWS_AS(in.validate(), UsageError);
    in.delta = 1.0;
    CHECK_THROWS_AS(in.validate(), UsageError);
    in = BoundInputs{};
    in.r = -0.5;
    CHECK_THROWS_AS(in.validate(), UsageError);
    in = BoundInputs{};
    in.trace_bound = -1.0;
    CHECK_THROWS_AS(in.validate(), UsageError);
}

TEST_CASE("report from a concrete model") {
    DenseMatrix zero(2, 2);
    BoundReport z = bound_report(zero, 100, 0.05, 1.0, 2);
    CHECK(z.trace == 0.0);
    CHECK(z.tail_sum == 0.0);
    CHECK(z.trace_bound_value == 0.0);
    // Only the head term survives: sqrt(theta/n).
    CHECK(z.local_rc_value == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));

    BoundReport r = bound_report(DenseMatrix::identity(2), 100, 0.05, 1.0, 2);
    CHECK(r.trace == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.tail_sum == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(r.local_rc_value - 0.1414214) < 1e-6);
}

TEST_CASE("report agrees with the standalone calculators") {
    DenseMatrix w = DenseMatrix::diag({2, 1, 0.5});
    const std::size_t n = 50;
    const double delta = 0.1;
    const double r = 0.75;
    const std::size_t theta = 1;
    BoundReport report = bound_report(w, n, delta, r, theta);

    BoundInputs in;
    in.n = n;
    in.delta = delta;
    in.r = r;
    in.theta = theta;
    in.tail_sum = report.tail_sum;
    in.trace_bound = report.trace;

    CHECK(std::fabs(report.trace_bound_value - trace_rademacher_bound(in)) < 1e-12);
    CHECK(std::fabs(report.local_rc_value - local_rademacher_bound(in)) < 1e-12);

    in.rademacher = report.trace_bound_value;
    CHECK(std::fabs(report.global_gap - global_bound_gap(in)) < 1e-12);
    in.rademacher = report.local_rc_value;
    CHECK(std::fabs(report.local_gap - local_bound_gap(in)) < 1e-12);
}

TEST_CASE("every bound shrinks as the sample grows") {
    double prev_global = 0.0;
    double prev_local = 0.0;
    double prev_rc = 0.0;
    double prev_trace = 0.0;
    bool first = true;
    for (std::size_t n : {10, 100, 1000, 10000}) {
        BoundInputs in;
        in.n = n;
        in.delta = 0.05;
        in.r = 1.0;
        in.theta = 2;
        in.tail_sum = 0.5;
        in.rademacher = 1.0 / std::sqrt(static_cast<double>(n));
        in.trace_bound = 3.0;
        double global = global_bound_gap(in);
        double local = local_bound_gap(in);
        double rc = local_rademacher_bound(in);
        double trace = trace_rademacher_bound(in);
        if (!first) {
            CHECK(global < prev_global);
            CHECK(local < prev_local);
            CHECK(rc < prev_rc);
            CHECK(trace < prev_trace);
        }
        prev_global = global;
        prev_local = local;
        prev_rc = rc;
        prev_trace = trace;
        first = false;
    }
}

} // TEST_SUITE("bounds")
