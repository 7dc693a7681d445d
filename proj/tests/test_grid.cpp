#include "mvrvfl/grid.hpp"

#include "doctest.h"
#include "mvrvfl/rng.hpp"
#include "test_util.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

using namespace mvrvfl;

namespace {

TwoViewDataset toy_two_view(int n, int ma, int mb, std::uint64_t seed) {
  Rng rng(seed);
  TwoViewDataset ds;
  ds.y = testutil::random_labels(n, rng);
  ds.a = testutil::random_matrix(n, ma, rng);
  ds.b = testutil::random_matrix(n, mb, rng);
  // A weak informative direction so accuracies vary across cells.
  for (int i = 0; i < n; ++i) {
    ds.a(i, 0) += 0.8 * ds.y[static_cast<std::size_t>(i)];
    ds.b(i, 0) += 0.8 * ds.y[static_cast<std::size_t>(i)];
  }
  ds.label_names = {"neg", "pos"};
  return ds;
}

}  // namespace

TEST_CASE("the default sweep spans eleven decades and eleven widths") {
  const GridSpec g = GridSpec::defaults();
  CHECK(g.c1.size() == 11);
  CHECK(g.c2.size() == 11);
  CHECK(g.theta.size() == 11);
  CHECK(g.rho.size() == 11);
  CHECK(g.h.size() == 11);
  CHECK(g.cells() == 161051);
  CHECK(g.c1.front() == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(g.c1.back() == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(g.c1[5] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.h.front() == 3);
  CHECK(g.h[1] == 23);
  CHECK(g.h.back() == 203);
}

TEST_CASE("cell enumeration runs h fastest and c1 slowest") {
  const GridSpec g = GridSpec::defaults();
  const MvHyper first = g.cell(0);
  CHECK(first.c1 == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(first.rho == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(first.h == 3);

  const MvHyper second = g.cell(1);
  CHECK(second.h == 23);
  CHECK(second.rho == first.rho);

  // One full h block advances rho by one step.
  const MvHyper next_rho = g.cell(g.h.size());
  CHECK(next_rho.h == 3);
  CHECK(next_rho.rho == doctest::Approx(1e-4).epsilon(1e-12));

  const std::size_t theta_stride = g.h.size() * g.rho.size();
  CHECK(g.cell(theta_stride).theta == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(g.cell(theta_stride * g.theta.size()).c2 ==
        doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(g.cell(g.cells() - 1).c1 == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(g.cell(g.cells() - 1).h == 203);
  CHECK_THROWS_AS(g.cell(g.cells()), std::out_of_range);

  // Decoding is a bijection on a small grid.
  GridSpec small;
  small.c1 = {1.0, 2.0};
  small.c2 = {3.0};
  small.theta = {1.0, 4.0, 5.0};
  small.rho = {0.0, -1.0};
  small.h = {2, 7};
  CHECK(small.cells() == 24);
  int seen_h7 = 0;
  for (std::size_t i = 0; i < small.cells(); ++i) {
    if (small.cell(i).h == 7) ++seen_h7;
    if (i > 0 && small.cell(i - 1).h == 2) {
      CHECK(small.cell(i).h == 7);  // h toggles fastest
    }
  }
  CHECK(seen_h7 == 12);
}

TEST_CASE("grid search reproduces a hand-rolled cross-validation") {
  const TwoViewDataset ds = toy_two_view(24, 3, 2, 91);
  GridSpec grid;
  grid.c1 = {0.1, 10.0};
  grid.c2 = {1.0};
  grid.theta = {1.0};
  grid.rho = {0.0, 1.0};
  grid.h = {4};
  const int k = 3;
  const std::uint64_t seed = 2024;
  const GridResult result =
      grid_search(ds, grid, k, seed, Activation::sigmoid);

  REQUIRE(result.table.size() == 4);
  const FoldPlan plan = make_folds(ds.n(), k, seed);
  bool found_best = false;
  double best_acc = 0.0;
  MvHyper best_hyper;
  for (std::size_t ci = 0; ci < grid.cells(); ++ci) {
    double sum = 0.0;
    for (int f = 0; f < k; ++f) {
      const TwoViewDataset train = subset(ds, plan.complement(f));
      const TwoViewDataset test = subset(ds, plan.members(f));
      const MvRvflModel model = train_mvrvfl(
          train.a, train.b, one_hot(train.y), grid.cell(ci),
          Activation::sigmoid, mix_seed(seed, ci, static_cast<std::uint64_t>(f)));
      const std::vector<int> pred =
          predict(model, DecisionRule::combined, test.a, test.b);
      long hits = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == test.y[i]) ++hits;
      }
      const double acc = static_cast<double>(hits) / pred.size();
      CHECK(result.table[ci].fold_accuracy[static_cast<std::size_t>(f)] ==
            acc);
      sum += acc;
    }
    const double mean = sum / k;
    CHECK_FALSE(result.table[ci].failed);
    REQUIRE(result.table[ci].mean_accuracy.has_value());
    CHECK(*result.table[ci].mean_accuracy == doctest::Approx(mean));
    if (!found_best || mean > best_acc) {
      found_best = true;
      best_acc = mean;
      best_hyper = grid.cell(ci);
    }
  }
  CHECK(result.best_accuracy == doctest::Approx(best_acc));
  CHECK(result.best.c1 == best_hyper.c1);
  CHECK(result.best.rho == best_hyper.rho);
  CHECK(result.best.h == best_hyper.h);
}

TEST_CASE("equal-accuracy ties resolve to the earliest cell") {
  // A wide-margin dataset every sane cell classifies perfectly, so the two
  // cells tie at accuracy 1 and only the strict-improvement rule decides.
  TwoViewDataset ds = toy_two_view(18, 2, 2, 17);
  for (int i = 0; i < ds.n(); ++i) {
    ds.a(i, 0) += 4.0 * ds.y[static_cast<std::size_t>(i)];
    ds.b(i, 0) += 4.0 * ds.y[static_cast<std::size_t>(i)];
  }
  GridSpec grid;
  grid.c1 = {1.0, 2.0};
  grid.c2 = {1.0};
  grid.theta = {1.0};
  grid.rho = {0.5};
  grid.h = {3};
  const GridResult result = grid_search(ds, grid, 3, 7, Activation::sigmoid);
  REQUIRE(result.table.size() == 2);
  REQUIRE(result.table[0].mean_accuracy.has_value());
  REQUIRE(result.table[1].mean_accuracy.has_value());
  REQUIRE(*result.table[0].mean_accuracy == 1.0);
  REQUIRE(*result.table[1].mean_accuracy == 1.0);
  CHECK(result.best_accuracy == 1.0);
  CHECK(result.best.c1 == 1.0);  // cell 0 keeps the tie
}

TEST_CASE("cells that cannot train are recorded and skipped") {
  const TwoViewDataset ds = toy_two_view(15, 2, 2, 5);
  GridSpec grid;
  grid.c1 = {1.0};
  grid.c2 = {1.0};
  grid.theta = {1.0};
  // 1e308 overflows the coupling products into non-finite territory.
  grid.rho = {1e308, 1.0};
  grid.h = {3};
  const GridResult result = grid_search(ds, grid, 3, 11, Activation::sigmoid);
  REQUIRE(result.table.size() == 2);
  CHECK(result.table[0].failed);
  CHECK_FALSE(result.table[0].mean_accuracy.has_value());
  CHECK_FALSE(result.table[1].failed);
  CHECK(result.best.rho == 1.0);

  GridSpec hopeless = grid;
  hopeless.rho = {1e308};
  CHECK_THROWS_WITH_AS(
      grid_search(ds, hopeless, 3, 11, Activation::sigmoid),
      "grid search failed: no hyperparameter cell trained successfully",
      std::runtime_error);
}

TEST_CASE("grid search validates the grid and the fold count") {
  const TwoViewDataset ds = toy_two_view(12, 2, 2, 3);
  GridSpec empty;
  CHECK_THROWS_WITH_AS(grid_search(ds, empty, 3, 1, Activation::sigmoid),
                       "empty grid", std::invalid_argument);
  GridSpec one;
  one.c1 = {1.0};
  one.c2 = {1.0};
  one.theta = {1.0};
  one.rho = {1.0};
  one.h = {3};
  CHECK_THROWS_AS(grid_search(ds, one, 1, 1, Activation::sigmoid),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_search(ds, one, 13, 1, Activation::sigmoid),
                  std::invalid_argument);
}

TEST_CASE("grid search is deterministic in the seed") {
  const TwoViewDataset ds = toy_two_view(20, 2, 3, 29);
  GridSpec grid;
  grid.c1 = {0.1, 10.0};
  grid.c2 = {1.0};
  grid.theta = {1.0};
  grid.rho = {1.0};
  grid.h = {3, 23};
  const GridResult a = grid_search(ds, grid, 4, 99, Activation::sigmoid);
  const GridResult b = grid_search(ds, grid, 4, 99, Activation::sigmoid);
  REQUIRE(a.table.size() == b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    CHECK(a.table[i].mean_accuracy == b.table[i].mean_accuracy);
  }
  CHECK(a.best_accuracy == b.best_accuracy);
}
