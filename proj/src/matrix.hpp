#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace svtail {

// Dense real matrix in row-major order. The single carrier type for feature
// matrices, label matrices, weight matrices, and everything in between.
//
// Invariants enforced at construction: rows >= 1, cols >= 1, every entry
// finite. Entries written through operator() are not re-validated; code that
// fills a matrix incrementally is responsible for keeping them finite.
class DenseMatrix {
public:
    // Zero matrix of the given shape.
    DenseMatrix(std::size_t rows, std::size_t cols);

    // Takes ownership of `data`, which must hold rows*cols finite values.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    // Literal construction: DenseMatrix{{1, 2}, {3, 4}}.
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diag(const std::vector<double>& values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double factor);

// Largest absolute difference between corresponding entries.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// sqrt of the sum of squared entries.
double frobenius_norm(const DenseMatrix& a);

// Thin singular value decomposition a = u * diag(sigma) * v^T with
// r = min(rows, cols) columns in u and v and sigma sorted descending.
struct SvdResult {
    DenseMatrix u;             // rows x r, orthonormal columns
    std::vector<double> sigma; // length r, descending, non-negative
    DenseMatrix v;             // cols x r, orthonormal columns
};

// One-sided Jacobi SVD: cyclic sweeps of plane rotations on column pairs,
// a pair is skipped once |g_p . g_q| <= 1e-12 * ||g_p|| * ||g_q||, and a
// sweep in which every pair is skipped ends the iteration. Deterministic,
// no external dependencies. Throws NumericalError if 60 sweeps do not
// converge. Columns whose singular value is exactly zero receive
// deterministic orthonormal completions (Gram-Schmidt against the standard
// basis) so u and v always have full orthonormal column sets.
SvdResult svd(const DenseMatrix& a);

// Reconstructs u * diag(sigma) * v^T.
DenseMatrix svd_reconstruct(const SvdResult& s);

// Sum of the singular values after the first `theta` (0-based tail start):
// sigma[theta] + sigma[theta+1] + ... Returns 0 when theta >= sigma.size().
// The overload on a raw sigma vector exists so that callers who already
// hold an SVD can get bitwise-identical sums without a second decomposition.
double tail_singular_sum(const std::vector<double>& sigma, std::size_t theta);
double tail_singular_sum(const DenseMatrix& a, std::size_t theta);

// Sum of all singular values. Equals tail_singular_sum(a, 0) bitwise.
double trace_norm(const DenseMatrix& a);

} // namespace svtail
