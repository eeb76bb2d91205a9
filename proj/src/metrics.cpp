#include "metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace svtail {

void EvalPair::validate() const {
    if (!scores.same_shape(labels)) {
        throw UsageError("scores and labels must have identical shapes");
    }
    for (double v : labels.data()) {
        if (v != 0.0 && v != 1.0) {
            throw UsageError("labels must be exactly 0 or 1");
        }
    }
}

double hamming_loss(const EvalPair& pair) {
    pair.validate();
    std::size_t wrong = 0;
    const std::size_t m = pair.scores.rows();
    const std::size_t l = pair.scores.cols();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            double predicted = pair.scores(i, j) >= 0.5 ? 1.0 : 0.0;
            if (predicted != pair.labels(i, j)) {
                ++wrong;
            }
        }
    }
    return static_cast<double>(wrong) / static_cast<double>(m * l);
}

namespace {

// Label indices of one row ordered by descending score, ties toward the
// lower index.
std::vector<std::size_t> descending_order(const DenseMatrix& scores, std::size_t row) {
    std::vector<std::size_t> order(scores.cols());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores(row, a) != scores(row, b)) {
            return scores(row, a) > scores(row, b);
        }
        return a < b;
    });
    return order;
}

} // namespace

double top_k_accuracy(const EvalPair& pair, std::size_t k) {
    pair.validate();
    const std::size_t l = pair.scores.cols();
    if (k < 1 || k > l) {
        throw UsageError("top-k requires 1 <= k <= " + std::to_string(l) + ", got " +
                         std::to_string(k));
    }
    const std::size_t m = pair.scores.rows();
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::size_t> order = descending_order(pair.scores, i);
        std::size_t hits = 0;
        for (std::size_t p = 0; p < k; ++p) {
            if (pair.labels(i, order[p]) == 1.0) {
                ++hits;
            }
        }
        total += static_cast<double>(hits) / static_cast<double>(k);
    }
    return total / static_cast<double>(m);
}

double average_auc(const EvalPair& pair, std::size_t* skipped_rows) {
    pair.validate();
    const std::size_t m = pair.scores.rows();
    const std::size_t l = pair.scores.cols();
    double total = 0.0;
    std::size_t counted = 0;
    std::size_t skipped = 0;
    std::vector<std::size_t> order(l);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t positives = 0;
        for (std::size_t j = 0; j < l; ++j) {
            positives += pair.labels(i, j) == 1.0;
        }
        std::size_t negatives = l - positives;
        if (positives == 0 || negatives == 0) {
            ++skipped;
            continue;
        }

        // Walk scores in ascending order; groups of exactly equal scores
        // contribute half credit for their internal positive/negative pairs.
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pair.scores(i, a) < pair.scores(i, b);
        });
        double favorable = 0.0;
        std::size_t negatives_below = 0;
        std::size_t p = 0;
        while (p < l) {
            std::size_t q = p;
            std::size_t group_pos = 0;
            std::size_t group_neg = 0;
            while (q < l && pair.scores(i, order[q]) == pair.scores(i, order[p])) {
                if (pair.labels(i, order[q]) == 1.0) {
                    ++group_pos;
                } else {
                    ++group_neg;
                }
                ++q;
            }
            favorable += static_cast<double>(group_pos) *
                             static_cast<double>(negatives_below) +
                         0.5 * static_cast<double>(group_pos) *
                             static_cast<double>(group_neg);
            negatives_below += group_neg;
            p = q;
        }
        total += favorable /
                 (static_cast<double>(positives) * static_cast<double>(negatives));
        ++counted;
    }
    if (skipped_rows != nullptr) {
        *skipped_rows = skipped;
    }
    if (counted == 0) {
        throw MetricError(
            "AUC is undefined: no example has both a positive and a negative label");
    }
    return total / static_cast<double>(counted);
}

double average_precision(const EvalPair& pair, std::size_t* skipped_rows) {
    pair.validate();
    const std::size_t m = pair.scores.rows();
    double total = 0.0;
    std::size_t counted = 0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::size_t> order = descending_order(pair.scores, i);
        std::size_t relevant_seen = 0;
        double row_sum = 0.0;
        for (std::size_t p = 0; p < order.size(); ++p) {
            if (pair.labels(i, order[p]) == 1.0) {
                ++relevant_seen;
                row_sum += static_cast<double>(relevant_seen) /
                           static_cast<double>(p + 1);
            }
        }
        if (relevant_seen == 0) {
            ++skipped;
            continue;
        }
        total += row_sum / static_cast<double>(relevant_seen);
        ++counted;
    }
    if (skipped_rows != nullptr) {
        *skipped_rows = skipped;
    }
    if (counted == 0) {
        throw MetricError("average precision is undefined: no example has a relevant label");
    }
    return total / static_cast<double>(counted);
}

} // namespace svtail
