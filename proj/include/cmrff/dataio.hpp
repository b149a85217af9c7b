#pragma once

#include "cmrff/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cmrff {

struct SparseRow {
  std::vector<std::pair<int, double>> entries;  // 1-based index, value
};

struct LibsvmData {
  std::vector<SparseRow> rows;
  std::vector<int> labels;

  int max_index() const;
};

// "<label> <idx>:<val> ..." per line; indices 1-based and strictly increasing.
// Blank lines and '#' comments are skipped. Throws ParseError with the line number.
LibsvmData parse_libsvm(std::istream& in);
LibsvmData parse_libsvm_file(const std::string& path);

void write_libsvm(std::ostream& out, const LibsvmData& data);

// Dense N x dim matrix; absent entries are 0.
Matrix to_dense(const LibsvmData& data, int dim);

struct Dataset {
  Matrix x;
  std::vector<int> y;
  Vector feature_min;
  Vector feature_max;
  std::string name;

  Eigen::Index size() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }
};

Dataset make_dataset(const LibsvmData& data, int dim, std::string name);

// Reads a train/test pair sharing d = max index over both files.
std::pair<Dataset, Dataset> load_train_test(const std::string& train_path,
                                            const std::string& test_path);

// Min-max scaling from the training columns; constant columns map to 0 and
// test values are clipped to [0, 1]. Records the training min/max on both.
std::pair<Dataset, Dataset> normalize_minmax(const Dataset& train, const Dataset& test);

// Two distinct labels become {-1, +1} (smaller label -> -1); other label sets
// are returned unchanged.
std::vector<int> map_binary_labels(const std::vector<int>& labels);

std::vector<int> distinct_labels(const std::vector<int>& labels);

struct Fold {
  std::vector<int> train;
  std::vector<int> validation;
};

// Deterministic shuffled k-fold partition; fold sizes differ by at most one.
std::vector<Fold> kfold_split(int n, int k, std::uint64_t seed);

Dataset select_rows(const Dataset& data, const std::vector<int>& rows);

// First min(cap, n) entries of a seeded permutation of 0..n-1.
std::vector<int> sample_indices(int n, int cap, std::uint64_t seed, std::uint64_t stream_id);

}  // namespace cmrff
