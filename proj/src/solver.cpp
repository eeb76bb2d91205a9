#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "prox.hpp"

namespace svtail {

void SolverConfig::validate() const {
    if (!std::isfinite(gamma) || gamma <= 1.0) {
        throw UsageError("solver gamma must be > 1");
    }
    if (!std::isfinite(t0) || t0 < 0.0) {
        throw UsageError("solver t0 must be non-negative (0 selects the automatic value)");
    }
    if (!std::isfinite(c) || c < 0.0) {
        throw UsageError("solver c must be non-negative");
    }
    if (max_iters < 1) {
        throw UsageError("solver max_iters must be at least 1");
    }
    if (!std::isfinite(rel_tol) || rel_tol <= 0.0) {
        throw UsageError("solver rel_tol must be positive");
    }
}

namespace {

void check_data_shapes(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows() != y.rows()) {
        throw UsageError("feature and target row counts differ: " +
                         std::to_string(x.rows()) + " vs " + std::to_string(y.rows()));
    }
}

void check_model_shape(const DenseMatrix& w, const DenseMatrix& x, const DenseMatrix& y) {
    if (w.rows() != x.cols() || w.cols() != y.cols()) {
        throw UsageError("model shape " + std::to_string(w.rows()) + "x" +
                         std::to_string(w.cols()) + " does not match data (" +
                         std::to_string(x.cols()) + "x" + std::to_string(y.cols()) + ")");
    }
}

double squared_loss(const DenseMatrix& w, const DenseMatrix& x, const DenseMatrix& y) {
    double f = frobenius_norm(subtract(multiply(x, w), y));
    return f * f;
}

} // namespace

double penalty_value(const DenseMatrix& w, const SolverConfig& config) {
    switch (config.regularizer) {
        case Regularizer::tail:
            return tail_singular_sum(w, config.theta);
        case Regularizer::trace:
            return trace_norm(w);
        case Regularizer::frobenius: {
            double f = frobenius_norm(w);
            return f * f;
        }
        case Regularizer::none:
            return 0.0;
    }
    throw UsageError("unknown regularizer");
}

double objective(const DenseMatrix& w, const DenseMatrix& x, const DenseMatrix& y,
                 const SolverConfig& config) {
    config.validate();
    check_data_shapes(x, y);
    check_model_shape(w, x, y);
    return squared_loss(w, x, y) + config.c * penalty_value(w, config);
}

DenseMatrix gradient(const DenseMatrix& w, const DenseMatrix& x, const DenseMatrix& y) {
    check_data_shapes(x, y);
    check_model_shape(w, x, y);
    return scale(multiply(transpose(x), subtract(multiply(x, w), y)), 2.0);
}

std::pair<DenseMatrix, SolverTrace> fit(const DenseMatrix& x, const DenseMatrix& y,
                                        const SolverConfig& config) {
    config.validate();
    check_data_shapes(x, y);

    DenseMatrix w = config.w0 ? *config.w0 : DenseMatrix(x.cols(), y.cols());
    check_model_shape(w, x, y);

    double t0 = config.t0;
    if (t0 == 0.0) {
        double sigma_max = svd(x).sigma[0];
        t0 = 2.0 * sigma_max * sigma_max;
        if (t0 == 0.0) {
            t0 = 1.0;
        }
    }
    const double t_cap = 1e12 * t0;

    SolverTrace trace;
    double loss = squared_loss(w, x, y);
    double reg = penalty_value(w, config);
    double obj = loss + config.c * reg;
    if (!std::isfinite(obj)) {
        throw NumericalError("objective is non-finite at the initial iterate");
    }
    trace.objectives.push_back(obj);
    trace.loss_terms.push_back(loss);
    trace.reg_terms.push_back(reg);

    double t = t0;
    for (std::size_t k = 1; k <= config.max_iters; ++k) {
        t = std::min(t * config.gamma, t_cap);
        DenseMatrix g = subtract(w, scale(gradient(w, x, y), 1.0 / t));

        switch (config.regularizer) {
            case Regularizer::tail: {
                auto [next, values] =
                    partial_svt_with_values(g, ProxParams{config.c / t, config.theta});
                w = std::move(next);
                reg = tail_singular_sum(values, config.theta);
                break;
            }
            case Regularizer::trace: {
                auto [next, values] = svt_with_values(g, config.c / t);
                w = std::move(next);
                reg = tail_singular_sum(values, 0);
                break;
            }
            case Regularizer::frobenius: {
                w = scale(g, t / (t + 2.0 * config.c));
                double f = frobenius_norm(w);
                reg = f * f;
                break;
            }
            case Regularizer::none: {
                w = std::move(g);
                reg = 0.0;
                break;
            }
        }

        loss = squared_loss(w, x, y);
        double obj_next = loss + config.c * reg;
        if (!std::isfinite(obj_next)) {
            throw NumericalError("objective diverged at iteration " + std::to_string(k));
        }
        trace.objectives.push_back(obj_next);
        trace.loss_terms.push_back(loss);
        trace.reg_terms.push_back(reg);
        trace.iterations_run = k;

        double rel_change = std::abs(obj_next - obj) / std::max(obj, 1e-12);
        obj = obj_next;
        if (rel_change < config.rel_tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(w), std::move(trace)};
}

DenseMatrix ridge_closed_form(const DenseMatrix& x, const DenseMatrix& y, double c) {
    if (!std::isfinite(c) || c <= 0.0) {
        throw UsageError("ridge penalty weight must be positive");
    }
    check_data_shapes(x, y);
    SvdResult s = svd(x);
    DenseMatrix b = multiply(transpose(s.u), y); // r x L
    for (std::size_t i = 0; i < b.rows(); ++i) {
        double factor = s.sigma[i] / (s.sigma[i] * s.sigma[i] + c);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            b(i, j) *= factor;
        }
    }
    return multiply(s.v, b);
}

DenseMatrix predict(const DenseMatrix& w, const DenseMatrix& x) {
    if (x.cols() != w.rows()) {
        throw UsageError("predict shape mismatch: features have " +
                         std::to_string(x.cols()) + " columns, model has " +
                         std::to_string(w.rows()) + " rows");
    }
    return multiply(x, w);
}

std::size_t theta_from_fraction(double frac, std::size_t d, std::size_t l) {
    if (!std::isfinite(frac)) {
        throw UsageError("theta fraction must be finite");
    }
    long long rounded = std::llround(frac * static_cast<double>(l));
    if (rounded < 0) {
        rounded = 0;
    }
    return std::min(static_cast<std::size_t>(rounded), std::min(d, l));
}

} // namespace svtail
