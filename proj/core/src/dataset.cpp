#include "mvrvfl/dataset.hpp"

#include "mvrvfl/csv.hpp"
#include "mvrvfl/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mvrvfl {

namespace {

struct RawColumns {
  std::vector<std::string> names;    // feature column names, file order
  Matrix x;                          // parsed features
  std::vector<std::string> ids;      // empty when no id column
  std::vector<std::string> labels;   // empty when label column not requested
};

RawColumns parse_feature_table(const CsvTable& table, const std::string& origin,
                               const std::string& label_column) {
  RawColumns out;
  const int id_col = table.column("id");
  const int lbl_col =
      label_column.empty() ? -1 : table.column(label_column);
  if (!label_column.empty() && lbl_col < 0) {
    throw std::runtime_error(origin + ": missing label column '" +
                             label_column + "'");
  }
  std::vector<int> feature_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (static_cast<int>(c) == id_col || static_cast<int>(c) == lbl_col)
      continue;
    feature_cols.push_back(static_cast<int>(c));
    out.names.push_back(table.header[c]);
  }
  const int n = static_cast<int>(table.rows.size());
  out.x.resize(n, static_cast<int>(feature_cols.size()));
  for (int r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
      const int c = feature_cols[j];
      out.x(r, static_cast<int>(j)) = parse_number(
          row[c], origin + " row " + std::to_string(r + 2) + " column '" +
                      table.header[c] + "'");
    }
    if (id_col >= 0) out.ids.push_back(row[id_col]);
    if (lbl_col >= 0) out.labels.push_back(row[lbl_col]);
  }
  return out;
}

}  // namespace

std::pair<std::vector<int>, std::array<std::string, 2>> map_binary_labels(
    const std::vector<std::string>& raw, const std::string& origin) {
  std::set<std::string> distinct(raw.begin(), raw.end());
  if (distinct.size() != 2) {
    throw std::runtime_error(origin + ": expected exactly 2 distinct label "
                             "values, found " +
                             std::to_string(distinct.size()));
  }
  std::array<std::string, 2> names{*distinct.begin(), *std::next(distinct.begin())};
  std::vector<int> y(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    y[i] = raw[i] == names[0] ? -1 : 1;
  }
  return {y, names};
}

namespace {

void check_ids_match(const std::vector<std::string>& a,
                     const std::vector<std::string>& b,
                     const std::string& what) {
  if (a.empty() || b.empty()) return;
  if (a != b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i] != b[i]) {
        throw std::runtime_error("id mismatch between " + what + " at row " +
                                 std::to_string(i + 2) + ": '" + a[i] +
                                 "' vs '" + b[i] + "'");
      }
    }
    throw std::runtime_error("id mismatch between " + what);
  }
}

}  // namespace

std::vector<int> FoldPlan::members(int fold) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> FoldPlan::complement(int fold) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) out.push_back(static_cast<int>(i));
  }
  return out;
}

LabeledDataset load_csv_dataset(const std::string& path,
                                const std::string& label_column) {
  const CsvTable table = read_csv_file(path);
  if (table.rows.size() < 2) {
    throw std::runtime_error(path + ": need at least 2 data rows");
  }
  RawColumns raw = parse_feature_table(table, path, label_column);
  if (raw.x.cols() == 0) {
    throw std::runtime_error(path + ": no feature columns");
  }
  auto [y, names] = map_binary_labels(raw.labels, path);
  return LabeledDataset{std::move(raw.x), std::move(y), std::move(raw.ids),
                        std::move(raw.names), names};
}

FeatureTable load_feature_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  if (table.rows.empty()) {
    throw std::runtime_error(path + ": no data rows");
  }
  RawColumns raw = parse_feature_table(table, path, "");
  if (raw.x.cols() == 0) {
    throw std::runtime_error(path + ": no feature columns");
  }
  return FeatureTable{std::move(raw.x), std::move(raw.ids),
                      std::move(raw.names)};
}

TwoViewDataset load_two_view_csv(const std::string& view_a_path,
                                 const std::string& view_b_path,
                                 const std::string& labels_path,
                                 const std::string& label_column) {
  RawColumns a =
      parse_feature_table(read_csv_file(view_a_path), view_a_path, "");
  RawColumns b =
      parse_feature_table(read_csv_file(view_b_path), view_b_path, "");
  const CsvTable lbl_table = read_csv_file(labels_path);
  const int lbl_col = lbl_table.column(label_column);
  if (lbl_col < 0) {
    throw std::runtime_error(labels_path + ": missing label column '" +
                             label_column + "'");
  }
  const int id_col = lbl_table.column("id");
  std::vector<std::string> raw_labels;
  std::vector<std::string> lbl_ids;
  for (const auto& row : lbl_table.rows) {
    raw_labels.push_back(row[lbl_col]);
    if (id_col >= 0) lbl_ids.push_back(row[id_col]);
  }
  if (a.x.rows() != b.x.rows() ||
      a.x.rows() != static_cast<Eigen::Index>(raw_labels.size())) {
    throw std::runtime_error("row count mismatch: " + view_a_path + " has " +
                             std::to_string(a.x.rows()) + ", " + view_b_path +
                             " has " + std::to_string(b.x.rows()) + ", " +
                             labels_path + " has " +
                             std::to_string(raw_labels.size()));
  }
  if (a.x.rows() < 2) {
    throw std::runtime_error(view_a_path + ": need at least 2 data rows");
  }
  if (a.x.cols() == 0 || b.x.cols() == 0) {
    throw std::runtime_error("each view needs at least one feature column");
  }
  check_ids_match(a.ids, b.ids, view_a_path + " and " + view_b_path);
  check_ids_match(a.ids, lbl_ids, view_a_path + " and " + labels_path);
  check_ids_match(b.ids, lbl_ids, view_b_path + " and " + labels_path);
  auto [y, names] = map_binary_labels(raw_labels, labels_path);
  std::vector<std::string> ids =
      !a.ids.empty() ? a.ids : (!b.ids.empty() ? b.ids : lbl_ids);
  return TwoViewDataset{std::move(a.x), std::move(b.x), std::move(y),
                        std::move(ids), names};
}

TwoViewDataset load_two_view_prefixed(const std::string& path,
                                      const std::string& label_column) {
  const CsvTable table = read_csv_file(path);
  if (table.rows.size() < 2) {
    throw std::runtime_error(path + ": need at least 2 data rows");
  }
  const int lbl_col = table.column(label_column);
  if (lbl_col < 0) {
    throw std::runtime_error(path + ": missing label column '" + label_column +
                             "'");
  }
  const int id_col = table.column("id");
  std::vector<int> a_cols;
  std::vector<int> b_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const int ci = static_cast<int>(c);
    if (ci == lbl_col || ci == id_col) continue;
    const std::string& name = table.header[c];
    if (name.rfind("a_", 0) == 0) {
      a_cols.push_back(ci);
    } else if (name.rfind("b_", 0) == 0) {
      b_cols.push_back(ci);
    } else {
      throw std::runtime_error(path + ": column '" + name +
                               "' is neither a_*, b_*, id, nor the label");
    }
  }
  if (a_cols.empty() || b_cols.empty()) {
    throw std::runtime_error(path + ": both views need at least one column");
  }
  const int n = static_cast<int>(table.rows.size());
  TwoViewDataset ds;
  ds.a.resize(n, static_cast<int>(a_cols.size()));
  ds.b.resize(n, static_cast<int>(b_cols.size()));
  std::vector<std::string> raw_labels;
  for (int r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    const std::string at = path + " row " + std::to_string(r + 2);
    for (std::size_t j = 0; j < a_cols.size(); ++j) {
      ds.a(r, static_cast<int>(j)) =
          parse_number(row[a_cols[j]],
                       at + " column '" + table.header[a_cols[j]] + "'");
    }
    for (std::size_t j = 0; j < b_cols.size(); ++j) {
      ds.b(r, static_cast<int>(j)) =
          parse_number(row[b_cols[j]],
                       at + " column '" + table.header[b_cols[j]] + "'");
    }
    raw_labels.push_back(row[lbl_col]);
    if (id_col >= 0) ds.ids.push_back(row[id_col]);
  }
  auto [y, names] = map_binary_labels(raw_labels, path);
  ds.y = std::move(y);
  ds.label_names = names;
  return ds;
}

Matrix one_hot(const std::vector<int>& y) {
  Matrix out = Matrix::Zero(static_cast<int>(y.size()), 2);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == -1) {
      out(static_cast<int>(i), 0) = 1.0;
    } else if (y[i] == 1) {
      out(static_cast<int>(i), 1) = 1.0;
    } else {
      throw std::invalid_argument("label at row " + std::to_string(i) +
                                  " is " + std::to_string(y[i]) +
                                  ", expected -1 or +1");
    }
  }
  return out;
}

PcaModel fit_pca(const Matrix& x, double variance_fraction) {
  if (x.rows() < 2) throw std::invalid_argument("pca needs at least 2 rows");
  if (!(variance_fraction > 0.0 && variance_fraction <= 1.0)) {
    throw std::invalid_argument("variance fraction must be in (0, 1]");
  }
  PcaModel pca;
  pca.mean = x.colwise().mean();
  const Matrix centered = x.rowwise() - pca.mean;
  const Matrix cov =
      (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("pca eigendecomposition failed");
  }
  const int m = static_cast<int>(x.cols());
  // SelfAdjointEigenSolver orders ascending; flip to descending and clamp
  // eigenvalues below 1e-12 * largest (or below zero) to exactly zero.
  Vector ev(m);
  Matrix comps(m, m);
  for (int i = 0; i < m; ++i) {
    ev(i) = eig.eigenvalues()(m - 1 - i);
    comps.col(i) = eig.eigenvectors().col(m - 1 - i);
  }
  const double clamp = std::max(0.0, ev(0) * 1e-12);
  for (int i = 0; i < m; ++i) {
    if (ev(i) <= clamp) ev(i) = 0.0;
  }
  const double total = ev.sum();
  if (total <= 0.0) {
    throw std::runtime_error("pca input has no variance");
  }
  int k = 0;
  double cum = 0.0;
  const double target = variance_fraction * total;
  const double tol = total * 1e-12;
  while (k < m) {
    cum += ev(k);
    ++k;
    if (cum + tol >= target) break;
  }
  pca.components = comps.leftCols(k);
  for (int c = 0; c < k; ++c) {
    int arg = 0;
    for (int r = 1; r < m; ++r) {
      if (std::abs(pca.components(r, c)) >
          std::abs(pca.components(arg, c))) {
        arg = r;
      }
    }
    if (pca.components(arg, c) < 0.0) pca.components.col(c) *= -1.0;
  }
  pca.eigenvalues = ev;
  pca.k = k;
  return pca;
}

Matrix pca_transform(const PcaModel& pca, const Matrix& x) {
  if (x.cols() != pca.mean.cols()) {
    throw std::invalid_argument("pca transform: width mismatch");
  }
  return (x.rowwise() - pca.mean) * pca.components;
}

Matrix make_pca_view(const Matrix& x, double variance_fraction) {
  const PcaModel pca = fit_pca(x, variance_fraction);
  return pca_transform(pca, x);
}

SplitIndices train_test_split(int n, double train_fraction,
                              std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("split needs at least 2 rows");
  const long train_count = std::llround(n * train_fraction);
  if (train_count <= 0 || train_count >= n) {
    throw std::invalid_argument("split leaves a part empty (train size " +
                                std::to_string(train_count) + " of " +
                                std::to_string(n) + ")");
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  SplitIndices out;
  out.train.assign(idx.begin(), idx.begin() + train_count);
  out.test.assign(idx.begin() + train_count, idx.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

namespace {

std::vector<int> pick(const std::vector<int>& y, const std::vector<int>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (int r : rows) out.push_back(y[r]);
  return out;
}

std::vector<std::string> pick_ids(const std::vector<std::string>& ids,
                                  const std::vector<int>& rows) {
  if (ids.empty()) return {};
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (int r : rows) out.push_back(ids[r]);
  return out;
}

void check_rows(int n, const std::vector<int>& rows) {
  for (int r : rows) {
    if (r < 0 || r >= n) {
      throw std::out_of_range("subset row " + std::to_string(r) +
                              " outside [0, " + std::to_string(n) + ")");
    }
  }
}

Matrix pick_matrix(const Matrix& x, const std::vector<int>& rows) {
  Matrix out(static_cast<int>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<int>(i)) = x.row(rows[i]);
  }
  return out;
}

}  // namespace

LabeledDataset subset(const LabeledDataset& ds, const std::vector<int>& rows) {
  check_rows(ds.n(), rows);
  return LabeledDataset{pick_matrix(ds.x, rows), pick(ds.y, rows),
                        pick_ids(ds.ids, rows), ds.feature_names,
                        ds.label_names};
}

TwoViewDataset subset(const TwoViewDataset& ds, const std::vector<int>& rows) {
  check_rows(ds.n(), rows);
  return TwoViewDataset{pick_matrix(ds.a, rows), pick_matrix(ds.b, rows),
                        pick(ds.y, rows), pick_ids(ds.ids, rows),
                        ds.label_names};
}

FoldPlan make_folds(int n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("need at least 2 folds");
  if (k > n) {
    throw std::invalid_argument("more folds (" + std::to_string(k) +
                                ") than rows (" + std::to_string(n) + ")");
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  FoldPlan plan;
  plan.k = k;
  plan.assignment.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    plan.assignment[idx[i]] = i % k;
  }
  return plan;
}

}  // namespace mvrvfl
