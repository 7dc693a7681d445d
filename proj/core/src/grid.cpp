#include "mvrvfl/grid.hpp"

#include "mvrvfl/linalg.hpp"
#include "mvrvfl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mvrvfl {

GridSpec GridSpec::defaults() {
  GridSpec g;
  for (int e = -5; e <= 5; ++e) {
    g.c1.push_back(std::pow(10.0, e));
  }
  g.c2 = g.c1;
  g.theta = g.c1;
  g.rho = g.c1;
  for (int h = 3; h <= 203; h += 20) g.h.push_back(h);
  return g;
}

std::size_t GridSpec::cells() const {
  return c1.size() * c2.size() * theta.size() * rho.size() * h.size();
}

MvHyper GridSpec::cell(std::size_t index) const {
  if (index >= cells()) throw std::out_of_range("grid cell index");
  MvHyper hy;
  std::size_t rest = index;
  hy.h = h[rest % h.size()];
  rest /= h.size();
  hy.rho = rho[rest % rho.size()];
  rest /= rho.size();
  hy.theta = theta[rest % theta.size()];
  rest /= theta.size();
  hy.c2 = c2[rest % c2.size()];
  rest /= c2.size();
  hy.c1 = c1[rest];
  return hy;
}

GridResult grid_search(const TwoViewDataset& ds, const GridSpec& grid,
                       int k_folds, std::uint64_t seed, Activation activation,
                       DecisionRule rule) {
  if (grid.cells() == 0) throw std::invalid_argument("empty grid");
  const FoldPlan plan = make_folds(static_cast<int>(ds.n()), k_folds, seed);

  GridResult result;
  result.table.reserve(grid.cells());
  bool have_best = false;

  for (std::size_t ci = 0; ci < grid.cells(); ++ci) {
    GridCell cell;
    cell.index = ci;
    cell.hyper = grid.cell(ci);
    cell.fold_accuracy.assign(static_cast<std::size_t>(k_folds),
                              std::nullopt);
    double acc_sum = 0.0;
    for (int f = 0; f < k_folds && !cell.failed; ++f) {
      const TwoViewDataset train = subset(ds, plan.complement(f));
      const TwoViewDataset test = subset(ds, plan.members(f));
      try {
        const MvRvflModel model = train_mvrvfl(
            train.a, train.b, one_hot(train.y), cell.hyper, activation,
            mix_seed(seed, ci, static_cast<std::uint64_t>(f)));
        const std::vector<int> pred = predict(model, rule, test.a, test.b);
        long hits = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
          if (pred[i] == test.y[i]) ++hits;
        }
        const double acc = static_cast<double>(hits) / pred.size();
        cell.fold_accuracy[static_cast<std::size_t>(f)] = acc;
        acc_sum += acc;
      } catch (const linalg::SolveError&) {
        cell.failed = true;
      } catch (const std::invalid_argument&) {
        cell.failed = true;
      }
    }
    if (!cell.failed) {
      cell.mean_accuracy = acc_sum / k_folds;
      if (!have_best || *cell.mean_accuracy > result.best_accuracy) {
        have_best = true;
        result.best = cell.hyper;
        result.best_accuracy = *cell.mean_accuracy;
      }
    }
    result.table.push_back(std::move(cell));
  }
  if (!have_best) {
    throw std::runtime_error(
        "grid search failed: no hyperparameter cell trained successfully");
  }
  return result;
}

}  // namespace mvrvfl
