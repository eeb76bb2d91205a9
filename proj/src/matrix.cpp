#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace svtail {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1) {
        throw UsageError("matrix dimensions must be at least 1x1, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void check_finite(const std::vector<double>& data) {
    for (double x : data) {
        if (!std::isfinite(x)) {
            throw UsageError("matrix entries must be finite");
        }
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    check_shape(rows, cols);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_shape(rows, cols);
    if (data_.size() != rows_ * cols_) {
        throw UsageError("matrix data length " + std::to_string(data_.size()) +
                         " does not match shape " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
    }
    check_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_shape(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw UsageError("matrix literal has ragged rows");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    check_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::diag(const std::vector<double>& values) {
    DenseMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw UsageError("matrix product shape mismatch: " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    DenseMatrix c(a.rows(), b.cols());
    // i-k-j loop order streams through the row-major operands.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

namespace {

DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, bool subtract) {
    if (!a.same_shape(b)) {
        throw UsageError("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
    }
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = subtract ? a(i, j) - b(i, j) : a(i, j) + b(i, j);
        }
    }
    return c;
}

} // namespace

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    return elementwise(a, b, false);
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    return elementwise(a, b, true);
}

DenseMatrix scale(const DenseMatrix& a, double factor) {
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = factor * a(i, j);
        }
    }
    return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) {
        throw UsageError("matrix shapes differ in max_abs_diff");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

double frobenius_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (double x : a.data()) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

namespace {

constexpr double kJacobiRelTol = 1e-12;
constexpr int kJacobiMaxSweeps = 60;

double column_dot(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += p[i] * q[i];
    }
    return s;
}

// Core one-sided Jacobi for m >= n: orthogonalizes the columns of `a` by
// plane rotations, accumulating the rotations into v.
SvdResult svd_tall(const DenseMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    std::vector<std::vector<double>> g(n, std::vector<double>(m));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            g[j][i] = a(i, j);
        }
    }
    std::vector<std::vector<double>> vcols(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        vcols[j][j] = 1.0;
    }

    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = column_dot(g[p], g[p]);
                double aqq = column_dot(g[q], g[q]);
                double apq = column_dot(g[p], g[q]);
                if (std::abs(apq) <= kJacobiRelTol * std::sqrt(app) * std::sqrt(aqq)) {
                    continue;
                }
                rotated = true;
                double zeta = (aqq - app) / (2.0 * apq);
                double sign = zeta >= 0.0 ? 1.0 : -1.0;
                double t = sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    double gp = g[p][i];
                    double gq = g[q][i];
                    g[p][i] = c * gp - s * gq;
                    g[q][i] = s * gp + c * gq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vp = vcols[p][i];
                    double vq = vcols[q][i];
                    vcols[p][i] = c * vp - s * vq;
                    vcols[q][i] = s * vp + c * vq;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw NumericalError("svd did not converge within " +
                             std::to_string(kJacobiMaxSweeps) + " Jacobi sweeps");
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        norms[j] = std::sqrt(column_dot(g[j], g[j]));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SvdResult out{DenseMatrix(m, n), std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = order[j];
        out.sigma[j] = norms[src];
        for (std::size_t i = 0; i < n; ++i) {
            out.v(i, j) = vcols[src][i];
        }
        if (norms[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) {
                out.u(i, j) = g[src][i] / norms[src];
            }
        }
    }

    // Columns with a zero singular value carry no direction of their own;
    // fill them with the standard-basis vector whose Gram-Schmidt residual
    // against the columns placed so far is largest. Two projection passes
    // keep the result orthogonal to working precision.
    for (std::size_t j = 0; j < n; ++j) {
        if (out.sigma[j] > 0.0) {
            continue;
        }
        double best_norm = -1.0;
        std::vector<double> best_res;
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<double> res(m, 0.0);
            res[k] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j || (out.sigma[c] <= 0.0 && c > j)) {
                        continue;
                    }
                    double proj = 0.0;
                    for (std::size_t i = 0; i < m; ++i) {
                        proj += out.u(i, c) * res[i];
                    }
                    for (std::size_t i = 0; i < m; ++i) {
                        res[i] -= proj * out.u(i, c);
                    }
                }
            }
            double norm = std::sqrt(column_dot(res, res));
            if (norm > best_norm) {
                best_norm = norm;
                best_res = std::move(res);
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            out.u(i, j) = best_res[i] / best_norm;
        }
    }
    return out;
}

} // namespace

SvdResult svd(const DenseMatrix& a) {
    if (a.rows() >= a.cols()) {
        return svd_tall(a);
    }
    SvdResult t = svd_tall(transpose(a));
    return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

DenseMatrix svd_reconstruct(const SvdResult& s) {
    DenseMatrix scaled = s.u;
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) {
            scaled(i, j) *= s.sigma[j];
        }
    }
    return multiply(scaled, transpose(s.v));
}

double tail_singular_sum(const std::vector<double>& sigma, std::size_t theta) {
    double sum = 0.0;
    for (std::size_t j = theta; j < sigma.size(); ++j) {
        sum += sigma[j];
    }
    return sum;
}

double tail_singular_sum(const DenseMatrix& a, std::size_t theta) {
    if (theta >= std::min(a.rows(), a.cols())) {
        return 0.0;
    }
    return tail_singular_sum(svd(a).sigma, theta);
}

double trace_norm(const DenseMatrix& a) {
    return tail_singular_sum(svd(a).sigma, 0);
}

} // namespace svtail
