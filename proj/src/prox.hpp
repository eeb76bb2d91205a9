#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace svtail {

// Parameters of the spectral proximal operators: `threshold` is the
// shrinkage amount applied to singular values, `theta` the number of
// leading singular values exempt from shrinkage.
struct ProxParams {
    double threshold = 0.0;
    std::size_t theta = 0;

    void validate() const;
};

// Soft-thresholds every singular value: sigma_i -> max(0, sigma_i - threshold).
// This is the proximal operator of threshold * (sum of all singular values).
// threshold == 0 returns q unchanged (no decomposition round-trip).
DenseMatrix svt(const DenseMatrix& q, double threshold);

// Partial singular value thresholding: keeps the `theta` largest singular
// values of q untouched and soft-thresholds the rest,
//
//     sigma_i -> sigma_i                   for i <  theta
//     sigma_i -> max(0, sigma_i - C)       for i >= theta   (0-based i)
//
// which is the exact minimizer of
//
//     (1/2) * ||W - Q||_F^2 + C * (sum of singular values of W after the
//                                  first theta)
//
// over all W. Minimality follows from the von Neumann trace inequality:
// an optimal W shares Q's singular vectors, the objective separates per
// singular value after sorting, and the head values carry no penalty so
// shrinking them could only pay the quadratic cost. prox_oracle provides an
// independent exhaustive check of this rule.
//
// Identity shortcuts: threshold == 0, or theta >= min(q.rows, q.cols)
// (empty tail means zero penalty), return q unchanged.
DenseMatrix partial_svt(const DenseMatrix& q, const ProxParams& params);

// Same operators, but also returning the singular values of the result so
// callers that need the penalty value afterwards can skip a second
// decomposition. The returned vector is descending; when the identity
// shortcut fires it still holds the singular values of q.
std::pair<DenseMatrix, std::vector<double>> svt_with_values(const DenseMatrix& q,
                                                            double threshold);
std::pair<DenseMatrix, std::vector<double>> partial_svt_with_values(
    const DenseMatrix& q, const ProxParams& params);

// (1/2) * ||w - q||_F^2 + threshold * tail_singular_sum(w, theta).
double prox_objective(const DenseMatrix& w, const DenseMatrix& q,
                      const ProxParams& params);

// Exhaustive minimizer of the prox objective restricted to matrices sharing
// q's singular vectors. Each singular value is chosen from the grid
// {0, grid_step, 2*grid_step, ...} up to sigma_max + threshold, plus the two
// analytic candidates sigma_i and max(0, sigma_i - threshold) for every i;
// assignments are evaluated after re-sorting the chosen values into
// descending order. The search runs as a dynamic program over descending
// value chains, which covers exactly the re-sorted assignments. Test oracle
// only: q larger than 6x6 is rejected.
//
// Returns the minimizing matrix and the minimum objective value.
std::pair<DenseMatrix, double> prox_oracle(const DenseMatrix& q,
                                           const ProxParams& params,
                                           double grid_step);

} // namespace svtail
