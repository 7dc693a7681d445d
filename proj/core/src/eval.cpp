#include "mvrvfl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mvrvfl {

namespace {

void check_labels(const std::vector<int>& labels, const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != -1 && labels[i] != 1) {
      throw std::invalid_argument(std::string(what) + " entry " +
                                  std::to_string(i) + " is not -1 or +1");
    }
  }
}

std::optional<double> ratio(long num, long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

// Mid-ranks (1-based) of `values` under the given comparison order.
std::vector<double> mid_ranks(const std::vector<double>& values,
                              bool descending) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) /
                              2.0 +
                          1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

Confusion confusion(const std::vector<int>& truth,
                    const std::vector<int>& predicted) {
  if (truth.size() != predicted.size() || truth.empty()) {
    throw std::invalid_argument("confusion: label vectors must be nonempty "
                                "and equally sized");
  }
  check_labels(truth, "truth");
  check_labels(predicted, "prediction");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1) {
      (predicted[i] == 1 ? c.tp : c.fn)++;
    } else {
      (predicted[i] == -1 ? c.tn : c.fp)++;
    }
  }
  return c;
}

MetricSet metrics(const Confusion& c) {
  MetricSet m;
  m.counts = c;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  m.sensitivity = ratio(c.tp, c.tp + c.fn);
  m.specificity = ratio(c.tn, c.tn + c.fp);
  m.precision = ratio(c.tp, c.tp + c.fp);
  return m;
}

MetricSet metrics(const std::vector<int>& truth,
                  const std::vector<int>& predicted) {
  return metrics(confusion(truth, predicted));
}

double roc_auc(const std::vector<int>& truth,
               const std::vector<double>& score) {
  if (truth.size() != score.size() || truth.empty()) {
    throw std::invalid_argument("roc_auc: inputs must be nonempty and "
                                "equally sized");
  }
  check_labels(truth, "truth");
  long n_pos = 0;
  long n_neg = 0;
  for (int t : truth) (t == 1 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("roc_auc needs both classes present");
  }
  const std::vector<double> ranks = mid_ranks(score, /*descending=*/false);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1) rank_sum_pos += ranks[i];
  }
  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<RocPoint> roc_points(const std::vector<int>& truth,
                                 const std::vector<double>& score) {
  if (truth.size() != score.size() || truth.empty()) {
    throw std::invalid_argument("roc_points: inputs must be nonempty and "
                                "equally sized");
  }
  check_labels(truth, "truth");
  long n_pos = 0;
  long n_neg = 0;
  for (int t : truth) (t == 1 ? n_pos : n_neg)++;

  std::vector<std::size_t> order(truth.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score[a] > score[b];
  });

  std::vector<RocPoint> points;
  points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  long tp = 0;
  long fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = score[order[i]];
    // All samples sharing this score flip together.
    while (i < order.size() && score[order[i]] == threshold) {
      (truth[order[i]] == 1 ? tp : fp)++;
      ++i;
    }
    RocPoint p;
    p.threshold = threshold;
    p.fpr = n_neg == 0 ? 0.0 : static_cast<double>(fp) / n_neg;
    p.tpr = n_pos == 0 ? 0.0 : static_cast<double>(tp) / n_pos;
    points.push_back(p);
  }
  return points;
}

std::vector<double> average_ranks(const Matrix& accuracy) {
  if (accuracy.rows() < 1 || accuracy.cols() < 2) {
    throw std::invalid_argument("rank table needs >= 1 row and >= 2 columns");
  }
  const int q = static_cast<int>(accuracy.cols());
  std::vector<double> mean_ranks(static_cast<std::size_t>(q), 0.0);
  std::vector<double> row(static_cast<std::size_t>(q));
  for (Eigen::Index i = 0; i < accuracy.rows(); ++i) {
    for (int j = 0; j < q; ++j) row[static_cast<std::size_t>(j)] =
        accuracy(i, j);
    const std::vector<double> r = mid_ranks(row, /*descending=*/true);
    for (int j = 0; j < q; ++j) mean_ranks[static_cast<std::size_t>(j)] +=
        r[static_cast<std::size_t>(j)];
  }
  for (double& v : mean_ranks) v /= static_cast<double>(accuracy.rows());
  return mean_ranks;
}

std::optional<double> friedman_f(double chi2, int n_datasets, int q_models) {
  const double den = static_cast<double>(n_datasets) * (q_models - 1) - chi2;
  if (den == 0.0) return std::nullopt;
  return (n_datasets - 1.0) * chi2 / den;
}

FriedmanResult friedman(const Matrix& accuracy) {
  if (accuracy.rows() < 2 || accuracy.cols() < 2) {
    throw std::invalid_argument(
        "rank test needs >= 2 datasets and >= 2 models");
  }
  const int n = static_cast<int>(accuracy.rows());
  const int q = static_cast<int>(accuracy.cols());
  FriedmanResult res;
  res.mean_ranks = average_ranks(accuracy);
  double sum_sq = 0.0;
  for (double r : res.mean_ranks) sum_sq += r * r;
  res.chi2 = 12.0 * n / (q * (q + 1.0)) *
             (sum_sq - q * (q + 1.0) * (q + 1.0) / 4.0);
  res.f_stat = friedman_f(res.chi2, n, q);
  res.dof_1 = q - 1;
  res.dof_2 = (n - 1) * (q - 1);
  return res;
}

double nemenyi_cd(double q_alpha, int q_models, int n_datasets) {
  if (q_models < 2 || n_datasets < 1) {
    throw std::invalid_argument("critical difference needs q >= 2, N >= 1");
  }
  return q_alpha *
         std::sqrt(q_models * (q_models + 1.0) / (6.0 * n_datasets));
}

WinTieLoss win_tie_loss(const std::vector<double>& acc_a,
                        const std::vector<double>& acc_b, double tie_tol) {
  if (acc_a.size() != acc_b.size() || acc_a.empty()) {
    throw std::invalid_argument("win/tie/loss: vectors must be nonempty and "
                                "equally sized");
  }
  if (!(tie_tol >= 0.0)) {
    throw std::invalid_argument("tie tolerance must be >= 0");
  }
  WinTieLoss w;
  for (std::size_t i = 0; i < acc_a.size(); ++i) {
    if (acc_a[i] > acc_b[i] + tie_tol) {
      ++w.wins;
    } else if (acc_b[i] > acc_a[i] + tie_tol) {
      ++w.losses;
    } else {
      ++w.ties;
    }
  }
  const double n = static_cast<double>(acc_a.size());
  w.significance_threshold = n / 2.0 + 1.96 * std::sqrt(n) / 2.0;
  return w;
}

int adjusted_wins(const WinTieLoss& w) {
  int ties = w.ties;
  if (ties % 2 == 1) --ties;
  return w.wins + ties / 2;
}

}  // namespace mvrvfl
