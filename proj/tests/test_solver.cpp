#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "solver.hpp"
#include "test_helpers.hpp"

using namespace svtail;
namespace helpers = svtail::testing;

namespace {

SolverConfig make_config(Regularizer reg, double c) {
    SolverConfig config;
    config.regularizer = reg;
    config.c = c;
    return config;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("objective hand values") {
    DenseMatrix x = DenseMatrix::identity(2);
    DenseMatrix y{{1}, {0}};

    // At W = 0 every regularizer gives exactly ||Y||_F^2.
    DenseMatrix w0(2, 1);
    for (Regularizer reg : {Regularizer::tail, Regularizer::trace,
                            Regularizer::frobenius, Regularizer::none}) {
        CHECK(objective(w0, x, y, make_config(reg, 3.0)) ==
              doctest::Approx(1.0).epsilon(1e-15));
    }

    // An exact unregularized fit scores zero.
    CHECK(objective(y, x, y, make_config(Regularizer::none, 0.0)) == 0.0);

    // ||y - w||^2 + 2 * trace_norm(w) at w = (0.5, 0): 0.25 + 2*0.5.
    DenseMatrix w{{0.5}, {0}};
    CHECK(objective(w, x, y, make_config(Regularizer::trace, 2.0)) ==
          doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("penalty_value per regularizer") {
    DenseMatrix w = DenseMatrix::diag({3, 2, 1});
    SolverConfig config;
    config.regularizer = Regularizer::trace;
    CHECK(penalty_value(w, config) == doctest::Approx(6.0).epsilon(1e-12));
    config.regularizer = Regularizer::tail;
    config.theta = 1;
    CHECK(penalty_value(w, config) == doctest::Approx(3.0).epsilon(1e-12));
    config.regularizer = Regularizer::frobenius;
    CHECK(penalty_value(w, config) == doctest::Approx(14.0).epsilon(1e-12));
    config.regularizer = Regularizer::none;
    CHECK(penalty_value(w, config) == 0.0);
}

TEST_CASE("gradient hand value and finite differences") {
    DenseMatrix x = DenseMatrix::identity(2);
    DenseMatrix y{{1}, {0}};
    DenseMatrix g = gradient(DenseMatrix(2, 1), x, y);
    CHECK(g(0, 0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(g(1, 0) == doctest::Approx(0.0).epsilon(1e-15));

    Rng rng(314159);
    for (auto [n, d, l] :
         std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>{
             {4, 3, 2}, {6, 2, 5}, {3, 3, 3}}) {
        DenseMatrix xr = helpers::random_matrix(rng, n, d);
        DenseMatrix yr = helpers::random_matrix(rng, n, l);
        DenseMatrix wr = helpers::random_matrix(rng, d, l);
        DenseMatrix gr = gradient(wr, xr, yr);
        SolverConfig plain = make_config(Regularizer::none, 0.0);
        const double step = 1e-5;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < l; ++j) {
                DenseMatrix up = wr;
                DenseMatrix down = wr;
                up(i, j) += step;
                down(i, j) -= step;
                double fd = (objective(up, xr, yr, plain) -
                             objective(down, xr, yr, plain)) /
                            (2 * step);
                double scale = std::max({1.0, std::fabs(fd), std::fabs(gr(i, j))});
                CHECK(std::fabs(fd - gr(i, j)) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("config validation") {
    DenseMatrix x = DenseMatrix::identity(2);
    DenseMatrix y{{1}, {0}};
    SolverConfig config;

    config.gamma = 1.0;
    CHECK_THROWS_AS(fit(x, y, config), UsageError);
    config.gamma = 0.5;
    CHECK_THROWS_AS(fit(x, y, config), UsageError);
    config = SolverConfig{};
    config.c = -1.0;
    CHECK_THROWS_AS(fit(x, y, config), UsageError);
    config = SolverConfig{};
    config.max_iters = 0;
    CHECK_THROWS_AS(fit(x, y, config), UsageError);
    config = SolverConfig{};
    config.rel_tol = 0.0;
    CHECK_THROWS_AS(fit(x, y, config), UsageError);
    config = SolverConfig{};
    config.t0 = -2.0;
    CHECK_THROWS_AS(fit(x, y, config), UsageError);

    // Shape mismatches.
    config = SolverConfig{};
    CHECK_THROWS_AS(fit(x, DenseMatrix(3, 1), config), UsageError);
    config.w0 = DenseMatrix(3, 3);
    CHECK_THROWS_AS(fit(x, y, config), UsageError);
}

TEST_CASE("single step lands on the gradient target") {
    // x = I, y = e1, w0 = 0, t1 = 2: the gradient step alone reaches y, and
    // the unregularized prox keeps it.
    DenseMatrix x = DenseMatrix::identity(2);
    DenseMatrix y{{1}, {0}};
    SolverConfig config = make_config(Regularizer::none, 0.0);
    config.gamma = 2.0;
    config.t0 = 1.0; // t_1 = gamma * t0 = 2
    config.max_iters = 1;
    auto [w, trace] = fit(x, y, config);
    CHECK(max_abs_diff(w, y) < 1e-12);
    CHECK(trace.iterations_run == 1);
    REQUIRE(trace.objectives.size() == 2);
    CHECK(trace.objectives[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(trace.objectives[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("near-zero ridge weight recovers the identity fit") {
    DenseMatrix x = DenseMatrix::identity(3);
    Rng rng(7);
    DenseMatrix y = helpers::random_matrix(rng, 3, 2);
    DenseMatrix w = ridge_closed_form(x, y, 1e-10);
    CHECK(max_abs_diff(w, y) < 1e-6);
}

TEST_CASE("ridge closed form hand value") {
    DenseMatrix x{{1}};
    DenseMatrix y{{1}};
    DenseMatrix w = ridge_closed_form(x, y, 1.0);
    CHECK(w(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(ridge_closed_form(x, y, 0.0), UsageError);
}

TEST_CASE("frobenius fit matches the ridge closed form") {
    Rng rng(246810);
    DenseMatrix x = helpers::random_matrix(rng, 12, 4, -1.0, 1.0);
    DenseMatrix y = helpers::random_matrix(rng, 12, 3, -0.05, 0.05);
    const double c = 0.5;

    // gamma barely above 1 keeps the step size near 1/t0 throughout, so the
    // iteration reaches the plateau the rel_tol stop detects instead of
    // freezing early on a decaying step budget.
    SolverConfig config = make_config(Regularizer::frobenius, c);
    config.gamma = 1.0001;
    config.rel_tol = 1e-10;
    config.max_iters = 100000;
    auto [w, trace] = fit(x, y, config);
    DenseMatrix exact = ridge_closed_form(x, y, c);
    CHECK(frobenius_norm(subtract(w, exact)) < 1e-5);
    CHECK(trace.converged);
}

TEST_CASE("zero-weight tail fit equals the unregularized fit") {
    Rng rng(1357);
    DenseMatrix x = helpers::random_matrix(rng, 8, 4);
    DenseMatrix y = helpers::random_matrix(rng, 8, 3);

    SolverConfig tail_config = make_config(Regularizer::tail, 0.0);
    tail_config.theta = 1;
    SolverConfig none_config = make_config(Regularizer::none, 0.0);
    auto [w_tail, trace_tail] = fit(x, y, tail_config);
    auto [w_none, trace_none] = fit(x, y, none_config);
    CHECK(max_abs_diff(w_tail, w_none) == 0.0);
    CHECK(trace_tail.iterations_run == trace_none.iterations_run);
}

TEST_CASE("full-head tail fit equals the unregularized fit") {
    Rng rng(8642);
    DenseMatrix x = helpers::random_matrix(rng, 8, 4);
    DenseMatrix y = helpers::random_matrix(rng, 8, 3);

    SolverConfig tail_config = make_config(Regularizer::tail, 0.5);
    tail_config.theta = 3; // min(d, l): the penalized tail is empty
    SolverConfig none_config = make_config(Regularizer::none, 0.0);
    auto [w_tail, trace_tail] = fit(x, y, tail_config);
    auto [w_none, trace_none] = fit(x, y, none_config);
    CHECK(max_abs_diff(w_tail, w_none) < 1e-12);
}

TEST_CASE("convex objectives decrease monotonically at safe step sizes") {
    Rng rng(11235);
    DenseMatrix x = helpers::random_matrix(rng, 10, 5);
    DenseMatrix y = helpers::random_matrix(rng, 10, 4);

    for (Regularizer reg :
         {Regularizer::trace, Regularizer::frobenius, Regularizer::none}) {
        SolverConfig config = make_config(reg, 0.2);
        config.max_iters = 80;
        // t0 = 0 resolves to 2*sigma_max(X)^2, so every step is safe.
        auto [w, trace] = fit(x, y, config);
        for (std::size_t k = 0; k + 1 < trace.objectives.size(); ++k) {
            CHECK(trace.objectives[k + 1] <= trace.objectives[k] + 1e-10);
        }
    }
}

TEST_CASE("tail fit improves and settles") {
    Rng rng(999);
    DenseMatrix x = helpers::random_matrix(rng, 10, 5);
    DenseMatrix y = helpers::random_matrix(rng, 10, 4);
    SolverConfig config = make_config(Regularizer::tail, 0.1);
    config.theta = 2;
    auto [w, trace] = fit(x, y, config);

    CHECK(trace.objectives.back() <= trace.objectives.front());
    // Near the end the objective has stopped moving in relative terms.
    const std::size_t len = trace.objectives.size();
    if (len > 11) {
        for (std::size_t k = len - 11; k + 1 < len; ++k) {
            double change = std::fabs(trace.objectives[k + 1] - trace.objectives[k]);
            CHECK(change <= config.rel_tol * 10 *
                                std::max(trace.objectives[k], 1e-12));
        }
    }
}

TEST_CASE("trace entries match recomputed objectives") {
    Rng rng(31337);
    DenseMatrix x = helpers::random_matrix(rng, 6, 3);
    DenseMatrix y = helpers::random_matrix(rng, 6, 2);
    SolverConfig config = make_config(Regularizer::tail, 0.25);
    config.theta = 1;
    auto [w, trace] = fit(x, y, config);

    REQUIRE(trace.objectives.size() == trace.iterations_run + 1);
    REQUIRE(trace.loss_terms.size() == trace.objectives.size());
    REQUIRE(trace.reg_terms.size() == trace.objectives.size());
    for (std::size_t k = 0; k < trace.objectives.size(); ++k) {
        CHECK(trace.objectives[k] ==
              doctest::Approx(trace.loss_terms[k] + config.c * trace.reg_terms[k])
                  .epsilon(1e-12));
    }
    // The last recorded objective is the objective of the returned model.
    double fresh = objective(w, x, y, config);
    CHECK(trace.objectives.back() == doctest::Approx(fresh).epsilon(1e-9));
}

TEST_CASE("warm start is honored") {
    DenseMatrix x = DenseMatrix::identity(2);
    DenseMatrix y{{1}, {0}};
    SolverConfig config = make_config(Regularizer::none, 0.0);
    config.w0 = y;
    config.max_iters = 1;
    auto [w, trace] = fit(x, y, config);
    CHECK(trace.objectives[0] == 0.0);
    CHECK(max_abs_diff(w, y) < 1e-12);
}

TEST_CASE("divergence is reported as a numerical error") {
    // Step parameter far below the Lipschitz constant with totally flat
    // growth: the iteration overshoots and the objective explodes.
    DenseMatrix x{{2}};
    DenseMatrix y{{1}};
    SolverConfig config = make_config(Regularizer::none, 0.0);
    config.t0 = 0.5;
    config.gamma = 1.0000001;
    config.max_iters = 500;
    CHECK_THROWS_AS(fit(x, y, config), NumericalError);
}

TEST_CASE("small planted instance recovers a low-rank model") {
    // Noise-free targets from a rank-2 predictor: the tail fit with a
    // matching head size should drive everything past sigma_2 to zero while
    // fitting nearly exactly.
    Rng rng(20240815);
    const std::size_t n = 60, d = 10, l = 5, rank = 2;
    DenseMatrix x = helpers::random_gaussian(rng, n, d);
    DenseMatrix a = helpers::random_gaussian(rng, d, rank);
    DenseMatrix b = helpers::random_gaussian(rng, l, rank);
    DenseMatrix w_star = multiply(a, transpose(b));
    DenseMatrix y = multiply(x, w_star);

    SolverConfig config = make_config(Regularizer::tail, 1e-3);
    config.theta = rank;
    config.gamma = 1.001;
    config.rel_tol = 1e-9;
    config.max_iters = 5000;
    auto [w, trace] = fit(x, y, config);

    SvdResult dec = svd(w);
    REQUIRE(dec.sigma.size() == l);
    CHECK(dec.sigma[rank] < 1e-3 * dec.sigma[0]);
    DenseMatrix residual = subtract(multiply(x, w), y);
    CHECK(frobenius_norm(residual) / frobenius_norm(y) < 1e-2);
}

TEST_CASE("predict multiplies") {
    DenseMatrix w{{1, 0}, {0, 2}};
    DenseMatrix x{{1, 1}, {2, 0}, {0, 3}};
    DenseMatrix s = predict(w, x);
    CHECK(s(0, 0) == 1.0);
    CHECK(s(0, 1) == 2.0);
    CHECK(s(1, 0) == 2.0);
    CHECK(s(2, 1) == 6.0);
}

TEST_CASE("theta from fraction") {
    CHECK(theta_from_fraction(0.5, 103, 14) == 7);
    CHECK(theta_from_fraction(0.0, 103, 14) == 0);
    CHECK(theta_from_fraction(1.0, 103, 14) == 14);
    CHECK(theta_from_fraction(5.0, 103, 14) == 14); // clamped to min(d, l)
    CHECK(theta_from_fraction(5.0, 3, 14) == 3);
    CHECK(theta_from_fraction(-1.0, 103, 14) == 0);
    CHECK(theta_from_fraction(0.25, 10, 6) == 2); // round(1.5) away from zero
}

} // TEST_SUITE("solver")
