#pragma once

#include "mvrvfl/dataset.hpp"
#include "mvrvfl/model.hpp"
#include "mvrvfl/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mvrvfl {

// Exhaustive hyperparameter grid. defaults() carries the standard sweep:
// c1, c2, theta, rho over 10^-5..10^5 (11 decade steps) and hidden widths
// 3, 23, ..., 203.
struct GridSpec {
  std::vector<double> c1;
  std::vector<double> c2;
  std::vector<double> theta;
  std::vector<double> rho;
  std::vector<int> h;

  static GridSpec defaults();
  std::size_t cells() const;
  // Cells enumerate with c1 outermost and h innermost; index() is the
  // position of a tuple in that order.
  MvHyper cell(std::size_t index) const;
};

struct GridCell {
  std::size_t index = 0;
  MvHyper hyper;
  std::vector<std::optional<double>> fold_accuracy;
  std::optional<double> mean_accuracy;  // empty when the cell failed
  bool failed = false;
};

struct GridResult {
  MvHyper best;
  double best_accuracy = 0.0;
  std::vector<GridCell> table;
};

// k-fold cross-validated accuracy of the requested decision rule per cell;
// the best cell maximizes mean accuracy, ties resolving to the earliest cell
// in grid order. Cells whose training fails anywhere are recorded and
// excluded. Fold assignment comes from `seed`; the model trained for (cell,
// fold) is seeded with mix_seed(seed, cell_index, fold_index), so any
// evaluation order gives identical results. Errors when every cell fails.
GridResult grid_search(const TwoViewDataset& ds, const GridSpec& grid,
                       int k_folds, std::uint64_t seed, Activation activation,
                       DecisionRule rule = DecisionRule::combined);

}  // namespace mvrvfl
