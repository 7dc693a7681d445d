#include "mvrvfl/eval.hpp"

#include "doctest.h"
#include "mvrvfl/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace mvrvfl;

TEST_CASE("confusion counts and the derived ratios") {
  const std::vector<int> truth{1, 1, 1, -1, -1, -1, 1, -1, -1, 1};
  const std::vector<int> pred{1, 1, -1, 1, -1, -1, 1, 1, -1, -1};
  const Confusion c = confusion(truth, pred);
  CHECK(c.tp == 3);
  CHECK(c.fn == 2);
  CHECK(c.fp == 2);
  CHECK(c.tn == 3);
  CHECK(c.total() == 10);
  const MetricSet m = metrics(truth, pred);
  CHECK(*m.accuracy == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(*m.sensitivity == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(*m.specificity == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(*m.precision == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("zero-denominator ratios stay empty instead of defaulting to 0") {
  Confusion c;
  c.tn = 4;
  c.fn = 1;  // no predicted positives, no true negatives missing
  const MetricSet m = metrics(c);
  CHECK(m.accuracy.has_value());
  CHECK(*m.accuracy == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(m.sensitivity.has_value());
  CHECK(*m.sensitivity == 0.0);
  CHECK_FALSE(m.precision.has_value());  // tp + fp == 0
  Confusion empty;
  const MetricSet none = metrics(empty);
  CHECK_FALSE(none.accuracy.has_value());
  CHECK_FALSE(none.sensitivity.has_value());
  CHECK_FALSE(none.specificity.has_value());
}

TEST_CASE("confusion validates its inputs") {
  CHECK_THROWS_AS(confusion({1, -1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(confusion({1, 2}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(confusion({1, -1}, {0, 1}), std::invalid_argument);
}

TEST_CASE("auc is 1 on separated scores and 0 when inverted") {
  const std::vector<int> truth{-1, -1, 1, 1};
  CHECK(roc_auc(truth, {0.1, 0.2, 0.8, 0.9}) == doctest::Approx(1.0));
  CHECK(roc_auc(truth, {0.9, 0.8, 0.2, 0.1}) == doctest::Approx(0.0));
  CHECK(roc_auc(truth, {0.5, 0.5, 0.5, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("rank-based auc equals the pair-counting reference") {
  Rng rng(70);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + static_cast<int>(rng.bounded(40));
    const std::vector<int> truth = testutil::random_labels(n, rng);
    std::vector<double> score(static_cast<std::size_t>(n));
    for (auto& s : score) {
      // Coarse grid scores force plenty of exact ties.
      s = std::floor(rng.unit() * 8.0) / 8.0;
    }
    const double got = roc_auc(truth, score);
    const double want = oracle::auc_pairs(truth, score);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("auc flips under score negation and label swap") {
  Rng rng(71);
  const std::vector<int> truth = testutil::random_labels(25, rng);
  std::vector<double> score(25);
  for (auto& s : score) s = rng.unit();
  std::vector<double> neg = score;
  for (auto& s : neg) s = -s;
  CHECK(roc_auc(truth, score) ==
        doctest::Approx(1.0 - roc_auc(truth, neg)).epsilon(1e-12));
}

TEST_CASE("auc requires both classes and aligned sizes") {
  CHECK_THROWS_AS(roc_auc({1, 1, 1}, {0.1, 0.2, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(roc_auc({-1, -1}, {0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(roc_auc({1, -1}, {0.1}), std::invalid_argument);
}

TEST_CASE("roc sweep points match a direct recount at every threshold") {
  Rng rng(72);
  const std::vector<int> truth = testutil::random_labels(30, rng);
  std::vector<double> score(30);
  for (auto& s : score) s = std::floor(rng.unit() * 6.0) / 6.0;
  long pos = 0;
  long neg = 0;
  for (int t : truth) (t == 1 ? pos : neg)++;

  const std::vector<RocPoint> pts = roc_points(truth, score);
  REQUIRE(!pts.empty());
  CHECK(pts.front().threshold == std::numeric_limits<double>::infinity());
  CHECK(pts.front().fpr == 0.0);
  CHECK(pts.front().tpr == 0.0);
  CHECK(pts.back().fpr == doctest::Approx(1.0));
  CHECK(pts.back().tpr == doctest::Approx(1.0));

  for (std::size_t k = 1; k < pts.size(); ++k) {
    long tp = 0;
    long fp = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (score[i] >= pts[k].threshold) (truth[i] == 1 ? tp : fp)++;
    }
    CHECK(pts[k].tpr == doctest::Approx(static_cast<double>(tp) / pos)
                            .epsilon(1e-14));
    CHECK(pts[k].fpr == doctest::Approx(static_cast<double>(fp) / neg)
                            .epsilon(1e-14));
    CHECK(pts[k].threshold < pts[k - 1].threshold);
  }
}

TEST_CASE("mean ranks use descending accuracy with shared mid-ranks") {
  Matrix acc(2, 3);
  acc << 0.9, 0.8, 0.7,  // clean ordering: ranks 1 2 3
      0.5, 0.5, 0.9;     // tie on the worst pair: ranks 2.5 2.5 1
  const std::vector<double> r = average_ranks(acc);
  CHECK(r[0] == doctest::Approx((1.0 + 2.5) / 2).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx((2.0 + 2.5) / 2).epsilon(1e-15));
  CHECK(r[2] == doctest::Approx((3.0 + 1.0) / 2).epsilon(1e-15));
}

TEST_CASE("mean ranks agree with the per-row reference") {
  Rng rng(73);
  const int n = 12;
  const int q = 5;
  Matrix acc(n, q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < q; ++j) {
      acc(i, j) = std::floor(rng.unit() * 10.0) / 10.0;
    }
  }
  const std::vector<double> got = average_ranks(acc);
  std::vector<double> want(q, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(q);
    for (int j = 0; j < q; ++j) row[static_cast<std::size_t>(j)] = acc(i, j);
    const std::vector<double> rr = oracle::ranks_descending(row);
    for (int j = 0; j < q; ++j) want[static_cast<std::size_t>(j)] += rr[j] / n;
  }
  double sum = 0.0;
  for (int j = 0; j < q; ++j) {
    CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-12));
    sum += got[j];
  }
  // Mid-ranks within each row always sum to q(q+1)/2.
  CHECK(sum == doctest::Approx(q * (q + 1) / 2.0).epsilon(1e-12));
}

TEST_CASE("friedman statistic on a hand-checked table") {
  // Rankings per row: (1,2,3), (2,1,3), (1,2,3). Mean ranks 4/3, 5/3, 3,
  // sum of squares 122/9, so chi2 = 3 * (122/9 - 12) = 14/3 and
  // F = 2 * chi2 / (6 - chi2) = 7.
  Matrix acc(3, 3);
  acc << 0.90, 0.80, 0.70,  //
      0.80, 0.90, 0.70,     //
      0.95, 0.85, 0.50;
  const FriedmanResult res = friedman(acc);
  CHECK(res.chi2 == doctest::Approx(14.0 / 3.0).epsilon(1e-12));
  CHECK(res.dof_1 == 2);
  CHECK(res.dof_2 == 4);
  REQUIRE(res.f_stat.has_value());
  CHECK(*res.f_stat == doctest::Approx(7.0).epsilon(1e-12));
  REQUIRE(res.mean_ranks.size() == 3);
  CHECK(res.mean_ranks[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(res.mean_ranks[1] == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(res.mean_ranks[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("friedman is invariant to shuffling datasets and zero on ties") {
  Rng rng(75);
  Matrix acc(9, 4);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 4; ++j) {
      acc(i, j) = std::floor(rng.unit() * 12.0) / 12.0;
    }
  }
  const FriedmanResult base = friedman(acc);
  Matrix shuffled = acc;
  std::vector<int> perm{4, 1, 7, 0, 8, 3, 6, 2, 5};
  for (int i = 0; i < 9; ++i) shuffled.row(i) = acc.row(perm[i]);
  CHECK(friedman(shuffled).chi2 == doctest::Approx(base.chi2).epsilon(1e-12));

  const Matrix flat = Matrix::Constant(5, 3, 0.5);
  const FriedmanResult tied = friedman(flat);
  CHECK(tied.chi2 == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(tied.f_stat.has_value());
  CHECK(*tied.f_stat == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("friedman f is empty exactly when the denominator vanishes") {
  // Identical tie-free rankings in every row: chi2 reaches N(q-1).
  Matrix acc(4, 3);
  for (int i = 0; i < 4; ++i) {
    acc(i, 0) = 0.9;
    acc(i, 1) = 0.8;
    acc(i, 2) = 0.7;
  }
  const FriedmanResult res = friedman(acc);
  CHECK(res.chi2 == doctest::Approx(4.0 * 2).epsilon(1e-12));
  CHECK_FALSE(res.f_stat.has_value());
  CHECK_FALSE(friedman_f(8.0, 4, 3).has_value());
  CHECK(friedman_f(7.9, 4, 3).has_value());
}

TEST_CASE("friedman validates the table shape") {
  CHECK_THROWS_AS(friedman(Matrix::Ones(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(friedman(Matrix::Ones(3, 1)), std::invalid_argument);
}

TEST_CASE("nemenyi critical difference") {
  // q_alpha 2.850 with 6 models over 26 datasets.
  CHECK(nemenyi_cd(2.850, 6, 26) ==
        doctest::Approx(2.850 * std::sqrt(6.0 * 7 / (6.0 * 26)))
            .epsilon(1e-12));
  // Quadrupling the dataset count halves the radicand's 1/N factor.
  CHECK(nemenyi_cd(2.0, 5, 40) ==
        doctest::Approx(2.0 * nemenyi_cd(2.0, 5, 160)).epsilon(1e-12));
  CHECK_THROWS_AS(nemenyi_cd(2.0, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(nemenyi_cd(2.0, 5, 0), std::invalid_argument);
}

TEST_CASE("sign-test counts respect the tie tolerance") {
  const std::vector<double> a{0.90, 0.80, 0.70, 0.60, 0.50};
  const std::vector<double> b{0.80, 0.80 + 5e-13, 0.75, 0.60, 0.40};
  const WinTieLoss w = win_tie_loss(a, b);
  CHECK(w.wins == 2);   // 0.90 vs 0.80, 0.50 vs 0.40
  CHECK(w.ties == 2);   // exact tie and a 5e-13 gap under the default 1e-12
  CHECK(w.losses == 1);
  CHECK(w.significance_threshold ==
        doctest::Approx(2.5 + 1.96 * std::sqrt(5.0) / 2).epsilon(1e-12));

  const WinTieLoss strict = win_tie_loss(a, b, 0.0);
  CHECK(strict.wins == 2);
  CHECK(strict.ties == 1);
  CHECK(strict.losses == 2);

  const WinTieLoss coarse = win_tie_loss(a, b, 0.2);
  CHECK(coarse.wins == 0);
  CHECK(coarse.ties == 5);
}

TEST_CASE("significance threshold for 29 datasets") {
  std::vector<double> a(29, 1.0);
  std::vector<double> b(29, 0.0);
  const WinTieLoss w = win_tie_loss(a, b);
  CHECK(w.wins == 29);
  CHECK(w.significance_threshold ==
        doctest::Approx(14.5 + 1.96 * std::sqrt(29.0) / 2).epsilon(1e-4));
  CHECK(w.significance_threshold == doctest::Approx(19.7777).epsilon(1e-4));
}

TEST_CASE("tie splitting drops one odd tie before crediting wins") {
  WinTieLoss w;
  w.wins = 10;
  w.ties = 4;
  w.losses = 3;
  CHECK(adjusted_wins(w) == 12);
  w.ties = 5;
  CHECK(adjusted_wins(w) == 12);  // odd count drops one tie first
  w.ties = 0;
  CHECK(adjusted_wins(w) == 10);
}

TEST_CASE("sign-test inputs must be aligned and non-empty") {
  CHECK_THROWS_AS(win_tie_loss({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(win_tie_loss({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(win_tie_loss({1.0}, {1.0}, -1.0), std::invalid_argument);
}
