#pragma once

#include <cstddef>

#include "matrix.hpp"

namespace svtail {

// Inputs shared by the complexity-bound calculators. All logarithms in the
// formulas are natural. Fields a given calculator does not use may be left
// at their defaults.
struct BoundInputs {
    std::size_t n = 1;        // sample size
    double delta = 0.05;      // confidence parameter in (0, 1)
    double r = 0.0;           // variance / operator-norm radius
    std::size_t theta = 0;    // head size for the tail sum
    double tail_sum = 0.0;    // sum of singular values after the first theta
    double rademacher = 0.0;  // externally supplied complexity value
    double trace_bound = 0.0; // trace-norm radius of the model class

    void validate() const;
};

// 4 * rademacher + sqrt(2 * ln(2/delta) / n).
double global_bound_gap(const BoundInputs& in);

// 8 * rademacher + sqrt(8 * r * ln(2/delta) / n) + 3 * ln(2/delta) / n.
double local_bound_gap(const BoundInputs& in);

// r * sqrt(theta / n) + tail_sum / sqrt(n).
double local_rademacher_bound(const BoundInputs& in);

// trace_bound / sqrt(n).
double trace_rademacher_bound(const BoundInputs& in);

// All four calculators evaluated from a concrete model matrix: the tail sum
// and trace norm come from w's singular values, the trace complexity feeds
// the global gap, and the local complexity feeds the local gap.
struct BoundReport {
    double trace = 0.0;             // trace norm of w
    double tail_sum = 0.0;          // tail sum of w at theta
    double trace_bound_value = 0.0; // trace / sqrt(n)
    double local_rc_value = 0.0;    // r * sqrt(theta/n) + tail_sum / sqrt(n)
    double global_gap = 0.0;
    double local_gap = 0.0;
};

BoundReport bound_report(const DenseMatrix& w, std::size_t n, double delta, double r,
                         std::size_t theta);

} // namespace svtail
