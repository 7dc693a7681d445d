#pragma once

#include "mvrvfl/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mvrvfl {

// Binary-labeled feature table. x is n x m and finite; y holds -1/+1; ids is
// empty or has one entry per row; label_names[0] is the raw value mapped to
// -1, label_names[1] the one mapped to +1.
struct LabeledDataset {
  Matrix x;
  std::vector<int> y;
  std::vector<std::string> ids;
  std::vector<std::string> feature_names;
  std::array<std::string, 2> label_names;

  int n() const { return static_cast<int>(x.rows()); }
  int m() const { return static_cast<int>(x.cols()); }
};

// Feature table without labels (prediction-time input). ids is empty when the
// file has no "id" column.
struct FeatureTable {
  Matrix x;
  std::vector<std::string> ids;
  std::vector<std::string> feature_names;

  int n() const { return static_cast<int>(x.rows()); }
  int m() const { return static_cast<int>(x.cols()); }
};

// Row-aligned pair of feature tables over the same samples.
struct TwoViewDataset {
  Matrix a;
  Matrix b;
  std::vector<int> y;
  std::vector<std::string> ids;
  std::array<std::string, 2> label_names;

  int n() const { return static_cast<int>(a.rows()); }
};

// Assignment of each row to one of k folds; fold sizes differ by at most 1.
struct FoldPlan {
  int k = 0;
  std::vector<int> assignment;  // size n, values in [0, k)

  std::vector<int> members(int fold) const;
  std::vector<int> complement(int fold) const;
};

// Loads a feature table with an embedded label column. A column literally
// named "id" becomes row ids and is excluded from features; every other
// non-label column must be numeric. The label column must carry exactly two
// distinct raw values; sorted lexicographically (bytewise), the smaller maps
// to -1 and the larger to +1.
LabeledDataset load_csv_dataset(const std::string& path,
                                const std::string& label_column);

// Loads a pure feature table: optional "id" column, all other columns
// numeric features.
FeatureTable load_feature_csv(const std::string& path);

// Two feature files plus one label file, row-aligned. When two or more of the
// files carry an "id" column the ids must agree row by row.
TwoViewDataset load_two_view_csv(const std::string& view_a_path,
                                 const std::string& view_b_path,
                                 const std::string& labels_path,
                                 const std::string& label_column);

// Single file carrying both views: feature columns prefixed "a_" or "b_",
// an optional "id" column, and the label column. Anything else errors.
TwoViewDataset load_two_view_prefixed(const std::string& path,
                                      const std::string& label_column);

// Maps raw two-valued labels deterministically: the lexicographically
// (bytewise) smaller distinct value becomes -1, the larger +1. `origin` names
// the source in error messages.
std::pair<std::vector<int>, std::array<std::string, 2>> map_binary_labels(
    const std::vector<std::string>& raw, const std::string& origin);

// One-hot targets: column 0 encodes -1, column 1 encodes +1.
Matrix one_hot(const std::vector<int>& y);

// Principal components of the training rows. components has orthonormal
// columns ordered by descending eigenvalue of the sample covariance
// (n-1 denominator); eigenvalues below max(0, 1e-12 * largest) are clamped to
// zero before the cumulative-variance rule picks k. Sign convention: in each
// component the entry of largest magnitude (lowest index on ties) is made
// nonnegative.
struct PcaModel {
  Eigen::RowVectorXd mean;
  Matrix components;   // m x k
  Vector eigenvalues;  // all m, descending, clamped at 0
  int k = 0;
};

PcaModel fit_pca(const Matrix& x, double variance_fraction);
Matrix pca_transform(const PcaModel& pca, const Matrix& x);

// fit_pca + pca_transform on the same rows. Inside cross-validation fit on
// the training partition only and project validation rows with it.
Matrix make_pca_view(const Matrix& x, double variance_fraction);

// Deterministic index split; train gets llround(n * train_fraction) rows.
// Both parts are returned in ascending row order. Errors if a part is empty.
struct SplitIndices {
  std::vector<int> train;
  std::vector<int> test;
};
SplitIndices train_test_split(int n, double train_fraction,
                              std::uint64_t seed);

LabeledDataset subset(const LabeledDataset& ds, const std::vector<int>& rows);
TwoViewDataset subset(const TwoViewDataset& ds, const std::vector<int>& rows);

FoldPlan make_folds(int n, int k, std::uint64_t seed);

}  // namespace mvrvfl
