#include "completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace svtail {

void CompletionProblem::validate() const {
    if (holes.empty() || holes.size() > 2) {
        throw UsageError("completion search supports exactly 1 or 2 holes, got " +
                         std::to_string(holes.size()));
    }
    for (auto [i, j] : holes) {
        if (i >= base.rows() || j >= base.cols()) {
            throw UsageError("hole (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") lies outside the matrix");
        }
    }
    if (!std::isfinite(search_lo) || !std::isfinite(search_hi) ||
        search_lo > search_hi) {
        throw UsageError("completion search bounds must satisfy lo <= hi");
    }
}

DenseMatrix demo_matrix() {
    return DenseMatrix{{2, 1, 2, 1}, {1, 1, 2, 2}, {1, 1, 2, 2}};
}

CompletionProblem demo_problem(CompletionNorm norm, std::size_t theta, double lo,
                               double hi) {
    CompletionProblem p{demo_matrix(), {{1, 2}, {2, 3}}, lo, hi, norm, theta};
    p.validate();
    return p;
}

namespace {

double completion_norm(DenseMatrix& work, const CompletionProblem& problem,
                       const std::vector<double>& values) {
    for (std::size_t h = 0; h < problem.holes.size(); ++h) {
        work(problem.holes[h].first, problem.holes[h].second) = values[h];
    }
    std::size_t theta = problem.norm == CompletionNorm::trace ? 0 : problem.theta;
    if (theta >= std::min(work.rows(), work.cols())) {
        return 0.0;
    }
    return tail_singular_sum(svd(work).sigma, theta);
}

// Grid axis lo, lo+step, ... ; the count is computed once so accumulated
// floating-point drift cannot change the number of points.
std::vector<double> axis(double lo, double hi, double step) {
    auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + static_cast<double>(i) * step;
    }
    return out;
}

void check_step(double step) {
    if (!std::isfinite(step) || step <= 0.0) {
        throw UsageError("grid step must be positive");
    }
}

} // namespace

std::vector<SurfacePoint> norm_surface(const CompletionProblem& problem,
                                       double grid_step) {
    problem.validate();
    check_step(grid_step);

    DenseMatrix work = problem.base;
    std::vector<double> grid = axis(problem.search_lo, problem.search_hi, grid_step);
    std::vector<SurfacePoint> out;
    if (problem.holes.size() == 1) {
        out.reserve(grid.size());
        for (double v : grid) {
            out.push_back({{v}, completion_norm(work, problem, {v})});
        }
        return out;
    }
    out.reserve(grid.size() * grid.size());
    for (double v1 : grid) {
        for (double v2 : grid) {
            out.push_back({{v1, v2}, completion_norm(work, problem, {v1, v2})});
        }
    }
    return out;
}

MinimizerResult find_minimizer(const CompletionProblem& problem, double coarse_step,
                               std::size_t refine_rounds) {
    problem.validate();
    check_step(coarse_step);

    DenseMatrix work = problem.base;
    const std::size_t h = problem.holes.size();

    std::vector<double> best_values;
    double best_norm = std::numeric_limits<double>::infinity();
    auto search_window = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                             double step) {
        std::vector<std::vector<double>> axes(h);
        for (std::size_t a = 0; a < h; ++a) {
            axes[a] = axis(lo[a], hi[a], step);
        }
        std::vector<double> point(h);
        if (h == 1) {
            for (double v : axes[0]) {
                point[0] = v;
                double norm = completion_norm(work, problem, point);
                if (norm < best_norm) {
                    best_norm = norm;
                    best_values = point;
                }
            }
            return;
        }
        for (double v1 : axes[0]) {
            for (double v2 : axes[1]) {
                point[0] = v1;
                point[1] = v2;
                double norm = completion_norm(work, problem, point);
                if (norm < best_norm) {
                    best_norm = norm;
                    best_values = point;
                }
            }
        }
    };

    std::vector<double> lo(h, problem.search_lo);
    std::vector<double> hi(h, problem.search_hi);
    double step = coarse_step;
    search_window(lo, hi, step);
    for (std::size_t round = 0; round < refine_rounds; ++round) {
        for (std::size_t a = 0; a < h; ++a) {
            lo[a] = std::max(problem.search_lo, best_values[a] - 2.0 * step);
            hi[a] = std::min(problem.search_hi, best_values[a] + 2.0 * step);
        }
        step /= 10.0;
        search_window(lo, hi, step);
    }

    for (std::size_t a = 0; a < h; ++a) {
        work(problem.holes[a].first, problem.holes[a].second) = best_values[a];
    }
    return {best_values, best_norm, svd(work).sigma};
}

} // namespace svtail
