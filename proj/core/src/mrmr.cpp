#include "mvrvfl/mrmr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mvrvfl {

namespace {

// Equal-width bin assignment over [min, max]; a constant vector collapses to
// one occupied bin.
std::vector<int> discretize(const Vector& x, int bins) {
  const double lo = x.minCoeff();
  const double hi = x.maxCoeff();
  std::vector<int> out(static_cast<std::size_t>(x.size()), 0);
  if (hi <= lo) return out;
  const double width = (hi - lo) / bins;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    int b = static_cast<int>((x(i) - lo) / width);
    out[static_cast<std::size_t>(i)] = std::clamp(b, 0, bins - 1);
  }
  return out;
}

// Plug-in MI in nats from joint counts; empty cells contribute 0. The cell
// contributions are summed in sorted order so the result is a function of the
// contribution multiset alone: relabeling bins (which permutes the table)
// yields a bitwise-identical value, keeping exact ties bitwise ties for the
// lowest-index tie rule in the greedy ranking.
double mi_from_counts(const std::vector<int>& a, int a_card,
                      const std::vector<int>& b, int b_card) {
  const std::size_t n = a.size();
  std::vector<double> joint(static_cast<std::size_t>(a_card) * b_card, 0.0);
  std::vector<double> pa(a_card, 0.0);
  std::vector<double> pb(b_card, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    joint[static_cast<std::size_t>(a[i]) * b_card + b[i]] += 1.0;
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> terms;
  for (int i = 0; i < a_card; ++i) {
    for (int j = 0; j < b_card; ++j) {
      const double pij = joint[static_cast<std::size_t>(i) * b_card + j] * inv_n;
      if (pij <= 0.0) continue;
      terms.push_back(pij * std::log(pij / (pa[i] * inv_n * pb[j] * inv_n)));
    }
  }
  std::sort(terms.begin(), terms.end());
  double mi = 0.0;
  for (double t : terms) mi += t;
  // The estimate is nonnegative in exact arithmetic; clear rounding noise.
  return std::max(mi, 0.0);
}

void check_bins(int bins) {
  if (bins < 2) throw std::invalid_argument("need at least 2 bins");
}

// Relative width of the tie band in the greedy selection: rounding keeps
// equal-information candidates within ~1e-14 of each other, while distinct
// count tables move the objective by far more than 1e-12.
constexpr double kTieTolerance = 1e-12;

}  // namespace

double mutual_information(const Vector& x, const std::vector<int>& y,
                          int bins) {
  check_bins(bins);
  if (static_cast<std::size_t>(x.size()) != y.size() || y.empty()) {
    throw std::invalid_argument("mutual information: length mismatch");
  }
  // The label is discrete already: -1 -> 0, +1 -> 1.
  std::vector<int> lbl(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != -1 && y[i] != 1) {
      throw std::invalid_argument("labels must be -1 or +1");
    }
    lbl[i] = y[i] == 1 ? 1 : 0;
  }
  return mi_from_counts(discretize(x, bins), bins, lbl, 2);
}

double mutual_information(const Vector& a, const Vector& b, int bins) {
  check_bins(bins);
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("mutual information: length mismatch");
  }
  return mi_from_counts(discretize(a, bins), bins, discretize(b, bins), bins);
}

MrmrRanking mrmr_rank(const Matrix& x, const std::vector<int>& y, int bins) {
  check_bins(bins);
  const int m = static_cast<int>(x.cols());
  const int n = static_cast<int>(x.rows());
  if (m == 0 || n == 0 || static_cast<std::size_t>(n) != y.size()) {
    throw std::invalid_argument("mrmr: shape mismatch");
  }
  std::vector<double> relevance(m);
  for (int j = 0; j < m; ++j) {
    relevance[j] = mutual_information(Vector(x.col(j)), y, bins);
  }
  // Pairwise MI is computed lazily; greedy selection touches each
  // (candidate, selected) pair once.
  Matrix pair_mi = Matrix::Constant(m, m, -1.0);
  auto mi_pair = [&](int a, int b) {
    if (pair_mi(a, b) < 0.0) {
      const double v = mutual_information(Vector(x.col(a)), Vector(x.col(b)), bins);
      pair_mi(a, b) = v;
      pair_mi(b, a) = v;
    }
    return pair_mi(a, b);
  };

  MrmrRanking ranking;
  std::vector<bool> used(m, false);
  std::vector<double> redundancy_sum(m, 0.0);
  std::vector<double> objective(m, 0.0);
  for (int step = 0; step < m; ++step) {
    double min_objective = 0.0;
    bool seen = false;
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      const double redundancy =
          step == 0 ? 0.0 : redundancy_sum[j] / static_cast<double>(step);
      objective[j] = redundancy - relevance[j];
      if (!seen || objective[j] < min_objective) {
        min_objective = objective[j];
        seen = true;
      }
    }
    // Candidates within a relative tolerance of the minimum are tied; the
    // lowest index wins. Equal-information features can differ by rounding
    // alone, so a strict argmin would make the order depend on summation
    // noise rather than on the data.
    const double tie_band =
        min_objective + kTieTolerance * (1.0 + std::abs(min_objective));
    int best = -1;
    for (int j = 0; j < m && best < 0; ++j) {
      if (!used[j] && objective[j] <= tie_band) best = j;
    }
    used[best] = true;
    ranking.order.push_back(best);
    ranking.scores.push_back(objective[best]);
    for (int j = 0; j < m; ++j) {
      if (!used[j]) redundancy_sum[j] += mi_pair(j, best);
    }
  }
  return ranking;
}

Matrix select_fraction(const Matrix& x, const MrmrRanking& ranking,
                       double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("fraction must be in (0, 1]");
  }
  const int m = static_cast<int>(x.cols());
  if (static_cast<std::size_t>(m) != ranking.order.size()) {
    throw std::invalid_argument("ranking does not match feature count");
  }
  const int keep = static_cast<int>(std::ceil(fraction * m));
  Matrix out(x.rows(), keep);
  for (int j = 0; j < keep; ++j) {
    out.col(j) = x.col(ranking.order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace mvrvfl
