#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace svtail {

// Objective evaluated on a completed matrix.
enum class CompletionNorm { trace, tail };

// A small matrix with one or two unknown entries, to be filled by grid
// search over a square box so the chosen spectral norm is minimized.
struct CompletionProblem {
    DenseMatrix base; // entries at the holes are placeholders
    std::vector<std::pair<std::size_t, std::size_t>> holes;
    double search_lo = 1.0;
    double search_hi = 3.0;
    CompletionNorm norm = CompletionNorm::trace;
    std::size_t theta = 0; // used when norm == tail

    void validate() const;
};

// The bundled 3x4 demonstration matrix. Its two unknown entries sit at
// (1, 2) and (2, 3) (0-based). Completing with (2, 2) makes rows 1 and 2
// identical (exact rank 2, zero tail beyond the second singular value);
// the trace norm instead prefers a completion near (1.839, 1.427).
DenseMatrix demo_matrix();

// The demonstration problem over the given box.
CompletionProblem demo_problem(CompletionNorm norm, std::size_t theta,
                               double lo = 1.0, double hi = 3.0);

struct SurfacePoint {
    std::vector<double> values; // one entry per hole
    double norm;
};

// Evaluates the configured norm at every point of the Cartesian grid
// lo, lo+step, ... within [lo, hi], in row-major order over the holes
// (first hole is the slow axis). lo == hi degenerates to a single point.
std::vector<SurfacePoint> norm_surface(const CompletionProblem& problem,
                                       double grid_step);

struct MinimizerResult {
    std::vector<double> values; // argmin, one entry per hole
    double norm;                // objective at the argmin
    std::vector<double> sigma;  // singular values of the completion
};

// Coarse grid search over the box followed by refine_rounds of local
// refinement: each round re-searches a window of +-2 current cells around
// the incumbent (clamped to the box) with one tenth of the step. Ties keep
// the earlier grid point in row-major order, so the result is deterministic.
MinimizerResult find_minimizer(const CompletionProblem& problem, double coarse_step,
                               std::size_t refine_rounds);

} // namespace svtail
