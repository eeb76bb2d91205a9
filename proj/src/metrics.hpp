#pragma once

#include <cstddef>

#include "matrix.hpp"

namespace svtail {

// A score matrix paired with the binary ground-truth labels it is judged
// against. Shapes must agree and labels must be exactly 0 or 1.
struct EvalPair {
    const DenseMatrix& scores;
    const DenseMatrix& labels;

    void validate() const;
};

// Fraction of cells where round(score) != label, rounding scores >= 0.5 up.
double hamming_loss(const EvalPair& pair);

// Precision at k: per example, |top-k by score  ∩  relevant| / k, averaged
// over all examples. Ties in score break toward the lower label index.
// Requires 1 <= k <= L.
double top_k_accuracy(const EvalPair& pair, std::size_t k);

// Per-example ranking AUC (Mann-Whitney, ties count 1/2), averaged over the
// examples that have at least one positive and one negative label. Rows
// without both are skipped; their count is written to *skipped_rows when
// non-null. Throws MetricError when every row is skipped.
double average_auc(const EvalPair& pair, std::size_t* skipped_rows = nullptr);

// Per-example average precision with 1-based ranks in descending score
// order (ties toward the lower index), averaged over examples that have at
// least one relevant label. Rows without any are skipped; their count is
// written to *skipped_rows when non-null. Throws MetricError when every row
// is skipped.
double average_precision(const EvalPair& pair, std::size_t* skipped_rows = nullptr);

} // namespace svtail
