#pragma once

#include "mvrvfl/types.hpp"

#include <optional>
#include <vector>

namespace mvrvfl {

// +1 is the positive class.
struct Confusion {
  long tp = 0;
  long fn = 0;
  long fp = 0;
  long tn = 0;

  long total() const { return tp + fn + fp + tn; }
};

Confusion confusion(const std::vector<int>& truth,
                    const std::vector<int>& predicted);

// Ratios with a zero denominator are reported as empty optionals, never as a
// silent 0.
struct MetricSet {
  Confusion counts;
  std::optional<double> accuracy;
  std::optional<double> sensitivity;  // tp / (tp + fn)
  std::optional<double> specificity;  // tn / (tn + fp)
  std::optional<double> precision;    // tp / (tp + fp)
};

MetricSet metrics(const Confusion& c);
MetricSet metrics(const std::vector<int>& truth,
                  const std::vector<int>& predicted);

// Rank-based AUC; tied scores contribute 1/2 through mid-ranks. Errors when
// only one class is present.
double roc_auc(const std::vector<int>& truth,
               const std::vector<double>& score);

// Points of the ROC curve swept over unique score thresholds, descending;
// a sample is called positive when score >= threshold. The leading point is
// (+inf, 0, 0).
struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};
std::vector<RocPoint> roc_points(const std::vector<int>& truth,
                                 const std::vector<double>& score);

// Per-model mean ranks over an accuracy table (rows = datasets, columns =
// models). Within a row models are ranked by descending accuracy, rank 1 is
// best, ties share the mid-rank.
std::vector<double> average_ranks(const Matrix& accuracy);

// F statistic derived from the rank chi-square; empty when the denominator
// N(q-1) - chi2 vanishes (all rows rank the models identically, tie-free).
std::optional<double> friedman_f(double chi2, int n_datasets, int q_models);

struct FriedmanResult {
  double chi2 = 0.0;
  std::optional<double> f_stat;
  int dof_1 = 0;  // q - 1
  int dof_2 = 0;  // (N - 1)(q - 1)
  std::vector<double> mean_ranks;
};

// chi2 = 12N / (q(q+1)) * (sum_j R_j^2 - q(q+1)^2 / 4) over mean ranks R_j.
// Requires at least 2 models and 2 datasets.
FriedmanResult friedman(const Matrix& accuracy);

// Critical difference q_alpha * sqrt(q(q+1) / (6N)) for mean-rank gaps.
double nemenyi_cd(double q_alpha, int q_models, int n_datasets);

// Paired sign-test counts. Entry i is a win for A when
// acc_a[i] > acc_b[i] + tie_tol, a loss when acc_b[i] > acc_a[i] + tie_tol,
// a tie otherwise. significance_threshold = N/2 + 1.96 sqrt(N)/2; when
// declaring significance, split ties evenly between both sides after
// dropping one tie if their count is odd.
struct WinTieLoss {
  int wins = 0;
  int ties = 0;
  int losses = 0;
  double significance_threshold = 0.0;
};

WinTieLoss win_tie_loss(const std::vector<double>& acc_a,
                        const std::vector<double>& acc_b,
                        double tie_tol = 1e-12);

// Wins credited to A after the tie split described above.
int adjusted_wins(const WinTieLoss& w);

}  // namespace mvrvfl
