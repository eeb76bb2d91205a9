#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace svtail {

// Spectral penalty attached to the squared-loss objective.
//   tail:      sum of singular values of W after the first theta
//   trace:     sum of all singular values of W
//   frobenius: ||W||_F^2
//   none:      0
enum class Regularizer { tail, trace, frobenius, none };

struct SolverConfig {
    Regularizer regularizer = Regularizer::tail;
    std::size_t theta = 0;      // used by tail only
    double c = 1.0;             // penalty weight, >= 0
    double t0 = 0.0;            // initial step parameter; 0 means auto
                                // (2 * sigma_max(X)^2, the gradient Lipschitz
                                // constant of the squared loss)
    double gamma = 1.1;         // step growth per iteration, must be > 1
    std::size_t max_iters = 500;
    double rel_tol = 1e-6;      // relative objective-change stopping rule
    std::optional<DenseMatrix> w0; // initial iterate; zero matrix if absent

    void validate() const;
};

// Objective history of a fit() run. Index 0 describes the initial iterate;
// entry k describes the iterate after k proximal steps, so all three vectors
// have iterations_run + 1 entries and
// objectives[k] == loss_terms[k] + c * reg_terms[k].
struct SolverTrace {
    std::vector<double> objectives;
    std::vector<double> loss_terms;
    std::vector<double> reg_terms; // penalty value without the weight c
    std::size_t iterations_run = 0;
    bool converged = false;
};

// ||y - x*w||_F^2 + c * penalty(w) under the given configuration.
double objective(const DenseMatrix& w, const DenseMatrix& x, const DenseMatrix& y,
                 const SolverConfig& config);

// Penalty value without the weight c (tail sum, trace norm, ||W||_F^2, or 0).
double penalty_value(const DenseMatrix& w, const SolverConfig& config);

// Gradient of the data-fit term ||y - x*w||_F^2, namely 2 * x^T (x*w - y).
DenseMatrix gradient(const DenseMatrix& w, const DenseMatrix& x, const DenseMatrix& y);

// Proximal-gradient minimization of the configured objective:
//
//     t_k   = gamma * t_{k-1}                         (t_1 = gamma * t0)
//     G_k   = W_{k-1} - (1 / t_k) * grad f(W_{k-1})
//     W_k   = prox of the penalty at G_k with effective weight c / t_k
//
// where the prox is partial_svt (tail), svt (trace), the closed-form scale
// G_k * t_k / (t_k + 2c) (frobenius), or G_k itself (none). Stops when the
// relative objective change drops below rel_tol or after max_iters steps;
// exceeding max_iters leaves converged=false without error. A non-finite
// objective raises NumericalError naming the iteration. t_k is capped at
// 1e12 * t0; beyond that the update is stationary to machine precision
// anyway.
std::pair<DenseMatrix, SolverTrace> fit(const DenseMatrix& x, const DenseMatrix& y,
                                        const SolverConfig& config);

// Exact minimizer of ||y - x*w||_F^2 + c*||w||_F^2 for c > 0, computed as
// V * diag(sigma / (sigma^2 + c)) * U^T * y from the SVD of x.
DenseMatrix ridge_closed_form(const DenseMatrix& x, const DenseMatrix& y, double c);

// Score matrix x*w (examples are rows of x).
DenseMatrix predict(const DenseMatrix& w, const DenseMatrix& x);

// Rounds frac * l to the nearest integer and clamps to [0, min(d, l)].
std::size_t theta_from_fraction(double frac, std::size_t d, std::size_t l);

} // namespace svtail
