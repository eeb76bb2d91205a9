#include "prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace svtail {

void ProxParams::validate() const {
    if (!std::isfinite(threshold) || threshold < 0.0) {
        throw UsageError("prox threshold must be finite and non-negative");
    }
}

namespace {

DenseMatrix rebuild(const SvdResult& s, const std::vector<double>& values) {
    DenseMatrix scaled = s.u;
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) {
            scaled(i, j) *= values[j];
        }
    }
    return multiply(scaled, transpose(s.v));
}

} // namespace

std::pair<DenseMatrix, std::vector<double>> svt_with_values(const DenseMatrix& q,
                                                            double threshold) {
    return partial_svt_with_values(q, ProxParams{threshold, 0});
}

std::pair<DenseMatrix, std::vector<double>> partial_svt_with_values(
    const DenseMatrix& q, const ProxParams& params) {
    params.validate();
    SvdResult s = svd(q);
    std::vector<double> values = s.sigma;
    if (params.threshold == 0.0 || params.theta >= s.sigma.size()) {
        return {q, std::move(values)};
    }
    for (std::size_t i = params.theta; i < values.size(); ++i) {
        values[i] = std::max(0.0, values[i] - params.threshold);
    }
    return {rebuild(s, values), std::move(values)};
}

DenseMatrix svt(const DenseMatrix& q, double threshold) {
    ProxParams params{threshold, 0};
    params.validate();
    if (threshold == 0.0) {
        return q;
    }
    return partial_svt_with_values(q, params).first;
}

DenseMatrix partial_svt(const DenseMatrix& q, const ProxParams& params) {
    params.validate();
    if (params.threshold == 0.0 || params.theta >= std::min(q.rows(), q.cols())) {
        return q;
    }
    return partial_svt_with_values(q, params).first;
}

double prox_objective(const DenseMatrix& w, const DenseMatrix& q,
                      const ProxParams& params) {
    params.validate();
    double diff = frobenius_norm(subtract(w, q));
    double penalty = params.threshold == 0.0
                         ? 0.0
                         : params.threshold * tail_singular_sum(w, params.theta);
    return 0.5 * diff * diff + penalty;
}

std::pair<DenseMatrix, double> prox_oracle(const DenseMatrix& q,
                                           const ProxParams& params,
                                           double grid_step) {
    params.validate();
    if (q.rows() > 6 || q.cols() > 6) {
        throw UsageError("prox_oracle is a test oracle limited to 6x6 inputs");
    }
    if (!std::isfinite(grid_step) || grid_step <= 0.0) {
        throw UsageError("prox_oracle grid_step must be positive");
    }

    SvdResult s = svd(q);
    const std::vector<double>& sigma = s.sigma;
    const std::size_t r = sigma.size();
    const double thr = params.threshold;

    // Candidate pool: the regular grid up to sigma_max + threshold plus the
    // analytic candidates per index, sorted descending and deduplicated.
    std::vector<double> pool;
    double top = sigma[0] + thr;
    std::size_t grid_count = static_cast<std::size_t>(std::ceil(top / grid_step)) + 1;
    if (grid_count > 2000000) {
        throw UsageError("prox_oracle grid_step too fine for the value range");
    }
    pool.reserve(grid_count + 2 * r);
    for (std::size_t k = 0; k < grid_count; ++k) {
        pool.push_back(static_cast<double>(k) * grid_step);
    }
    for (double sv : sigma) {
        pool.push_back(sv);
        pool.push_back(std::max(0.0, sv - thr));
    }
    std::sort(pool.begin(), pool.end(), std::greater<double>());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    const std::size_t g = pool.size();

    // Re-sorting any assignment of candidate values descending makes it a
    // descending chain v_0 >= v_1 >= ... >= v_{r-1}, and the objective of the
    // sorted assignment separates as sum_i cost(i, v_i). A dynamic program
    // over chain prefixes therefore finds the exact minimum: with the pool
    // descending, v_{i-1} >= v_i = pool[j] means v_{i-1} is pool[k] for some
    // k <= j, so a running prefix minimum of the previous row suffices.
    auto cost = [&](std::size_t i, double v) {
        double d = v - sigma[i];
        return 0.5 * d * d + (i >= params.theta ? thr * v : 0.0);
    };

    std::vector<double> prev(g);
    // choices[i][j]: pool index chosen for level i-1 when level i picks pool[j].
    std::vector<std::vector<std::size_t>> choices(r, std::vector<std::size_t>(g, 0));

    for (std::size_t j = 0; j < g; ++j) {
        prev[j] = cost(0, pool[j]);
    }
    for (std::size_t i = 1; i < r; ++i) {
        // Prefix minima of the previous level.
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        std::vector<double> current(g);
        for (std::size_t j = 0; j < g; ++j) {
            if (prev[j] < best) {
                best = prev[j];
                best_j = j;
            }
            current[j] = cost(i, pool[j]) + best;
            choices[i][j] = best_j;
        }
        prev = std::move(current);
    }

    std::size_t arg = 0;
    for (std::size_t j = 1; j < g; ++j) {
        if (prev[j] < prev[arg]) {
            arg = j;
        }
    }

    std::vector<double> values(r);
    std::size_t j = arg;
    for (std::size_t i = r; i-- > 0;) {
        values[i] = pool[j];
        if (i > 0) {
            j = choices[i][j];
        }
    }

    double minimum = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        minimum += cost(i, values[i]);
    }
    return {rebuild(s, values), minimum};
}

} // namespace svtail
