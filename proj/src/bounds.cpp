#include "bounds.hpp"

#include <cmath>

#include "errors.hpp"

namespace svtail {

void BoundInputs::validate() const {
    if (n < 1) {
        throw UsageError("bound inputs require n >= 1");
    }
    if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0) {
        throw UsageError("bound inputs require 0 < delta < 1");
    }
    if (!std::isfinite(r) || r < 0.0 || !std::isfinite(tail_sum) || tail_sum < 0.0 ||
        !std::isfinite(rademacher) || rademacher < 0.0 || !std::isfinite(trace_bound) ||
        trace_bound < 0.0) {
        throw UsageError("bound inputs must be finite and non-negative");
    }
}

double global_bound_gap(const BoundInputs& in) {
    in.validate();
    double log_term = std::log(2.0 / in.delta);
    return 4.0 * in.rademacher + std::sqrt(2.0 * log_term / static_cast<double>(in.n));
}

double local_bound_gap(const BoundInputs& in) {
    in.validate();
    double n = static_cast<double>(in.n);
    double log_term = std::log(2.0 / in.delta);
    return 8.0 * in.rademacher + std::sqrt(8.0 * in.r * log_term / n) +
           3.0 * log_term / n;
}

double local_rademacher_bound(const BoundInputs& in) {
    in.validate();
    double n = static_cast<double>(in.n);
    return in.r * std::sqrt(static_cast<double>(in.theta) / n) +
           in.tail_sum / std::sqrt(n);
}

double trace_rademacher_bound(const BoundInputs& in) {
    in.validate();
    return in.trace_bound / std::sqrt(static_cast<double>(in.n));
}

BoundReport bound_report(const DenseMatrix& w, std::size_t n, double delta, double r,
                         std::size_t theta) {
    SvdResult s = svd(w);

    BoundReport out;
    out.trace = tail_singular_sum(s.sigma, 0);
    out.tail_sum = tail_singular_sum(s.sigma, theta);

    BoundInputs in;
    in.n = n;
    in.delta = delta;
    in.r = r;
    in.theta = theta;
    in.tail_sum = out.tail_sum;
    in.trace_bound = out.trace;
    in.validate();

    out.trace_bound_value = trace_rademacher_bound(in);
    out.local_rc_value = local_rademacher_bound(in);

    in.rademacher = out.trace_bound_value;
    out.global_gap = global_bound_gap(in);

    in.rademacher = out.local_rc_value;
    out.local_gap = local_bound_gap(in);
    return out;
}

} // namespace svtail
