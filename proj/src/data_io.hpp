#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace svtail {

// A multi-label training or test set: n x d features alongside n x L binary
// labels, with attribute names retained for serialization and for matching
// against label-list XML files.
struct MultiLabelDataset {
    DenseMatrix features;
    DenseMatrix labels;
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;
};

struct DatasetStats {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t l = 0;
    double cardinality = 0.0; // mean number of relevant labels per example
    double density = 0.0;     // cardinality / l
    std::size_t distinct = 0; // number of distinct label rows
};

// Loads the ARFF subset used by multi-label collections: case-insensitive
// @relation/@attribute/@data directives, '%' comment lines, numeric and
// {0,1}-nominal attributes, dense comma-separated rows, and sparse rows
// "{index value, ...}" with 0-based indices. The last (or first, per
// labels_at_end) label_count attributes become the labels.
//
// A non-empty xml_label_path names a label-list XML file (<label name="..."/>
// entries); the attributes whose names appear there become the labels
// instead, and label_count is then ignored unless non-zero and inconsistent,
// which is a usage error.
//
// Malformed input raises ParseError carrying the 1-based line number.
// Missing values ("?") are rejected: the learner has no missing-data
// semantics, so silently imputing would fabricate data.
MultiLabelDataset load_arff(const std::string& path, std::size_t label_count,
                            bool labels_at_end = true,
                            const std::string& xml_label_path = "");

// Writes the dataset as dense ARFF (features first, labels last, labels
// declared as {0,1}). load_arff on the result reproduces the matrices.
void save_arff(const MultiLabelDataset& ds, const std::string& path,
               const std::string& relation = "dataset");

// Row-wise union of two datasets with identical attribute names.
MultiLabelDataset merge(const MultiLabelDataset& a, const MultiLabelDataset& b);

DatasetStats stats(const MultiLabelDataset& ds);

// Generates a planted low-rank instance: X (n x d) standard normal,
// W* = A * B^T with A (d x rank) and B (l x rank) standard normal, scores
// S = X * W* plus noise * (standard normal), and labels 1[S_ij >= median of
// row i] (even l: median is the mean of the two middle values). Everything
// is drawn from one seeded generator in the fixed order X, A, B, noise
// matrix, row-major within each, so a seed pins the output bit-for-bit.
// Returns the dataset and the planted W*.
std::pair<MultiLabelDataset, DenseMatrix> synth_low_rank(std::size_t n, std::size_t d,
                                                         std::size_t l, std::size_t rank,
                                                         double noise,
                                                         std::uint64_t seed);

// Model persistence. Format: optional '#' comment lines, a "<d> <L>" header
// line, then d lines of L space-separated values printed with enough digits
// (%.17g) that loading reproduces every double bit-for-bit. The comments
// parameter is written as leading '#' lines.
void save_model(const DenseMatrix& w, const std::string& path,
                const std::vector<std::string>& comments = {});
DenseMatrix load_model(const std::string& path);

} // namespace svtail
