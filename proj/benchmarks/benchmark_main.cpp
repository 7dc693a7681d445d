// Microbenchmarks for the hot paths: coupled and single-view training,
// feature extraction and the greedy selection stage. Run the binary directly;
// it is not part of the ctest suite.

#include <benchmark/benchmark.h>

#include "mvrvfl/dataset.hpp"
#include "mvrvfl/features.hpp"
#include "mvrvfl/model.hpp"
#include "mvrvfl/mrmr.hpp"
#include "mvrvfl/rng.hpp"
#include "mvrvfl/sequence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace {

using mvrvfl::Matrix;

Matrix random_matrix(int n, int m, std::uint64_t seed) {
  mvrvfl::Rng rng(seed);
  Matrix x(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) x(i, j) = rng.symmetric_unit();
  }
  return x;
}

std::vector<int> random_labels(int n, std::uint64_t seed) {
  mvrvfl::Rng rng(seed);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (auto& v : y) v = rng.unit() < 0.5 ? -1 : 1;
  y.front() = -1;
  y.back() = 1;
  return y;
}

std::string random_sequence(int len, std::uint64_t seed) {
  mvrvfl::Rng rng(seed);
  std::string s(static_cast<std::size_t>(len), 'A');
  for (auto& ch : s) {
    ch = mvrvfl::kAminoOrder[static_cast<std::size_t>(rng.bounded(20))];
  }
  return s;
}

mvrvfl::PssmProfile random_profile(int len, std::uint64_t seed) {
  mvrvfl::Rng rng(seed);
  mvrvfl::PssmProfile p;
  p.id = "bench";
  p.residues = random_sequence(len, seed + 1);
  p.scores = Matrix(len, 20);
  for (int i = 0; i < len; ++i) {
    for (int j = 0; j < 20; ++j) p.scores(i, j) = 10.0 * rng.symmetric_unit();
  }
  return p;
}

void BM_TrainCoupled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const int h = static_cast<int>(state.range(2));
  const Matrix xa = random_matrix(n, m, 1);
  const Matrix xb = random_matrix(n, m, 2);
  const Matrix targets = mvrvfl::one_hot(random_labels(n, 3));
  const mvrvfl::MvHyper hyper{1.0, 1.0, 1.0, 0.5, h};
  for (auto _ : state) {
    const mvrvfl::MvRvflModel model = mvrvfl::train_mvrvfl(
        xa, xb, targets, hyper, mvrvfl::Activation::sigmoid, 7);
    benchmark::DoNotOptimize(model.beta1.sum());
  }
}
BENCHMARK(BM_TrainCoupled)
    ->Args({100, 20, 23})
    ->Args({200, 50, 63})
    ->Args({400, 100, 103});

void BM_TrainRidge(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const int h = static_cast<int>(state.range(2));
  const Matrix x = random_matrix(n, m, 11);
  const Matrix targets = mvrvfl::one_hot(random_labels(n, 12));
  for (auto _ : state) {
    const mvrvfl::RvflModel model = mvrvfl::train_rvfl(
        x, targets, h, 1.0, mvrvfl::Activation::relu, 13);
    benchmark::DoNotOptimize(model.beta.sum());
  }
}
BENCHMARK(BM_TrainRidge)
    ->Args({300, 40, 50})    // narrow design: primal branch
    ->Args({120, 60, 200});  // wide design: dual branch

void BM_Mcd(benchmark::State& state) {
  const std::string seq =
      random_sequence(static_cast<int>(state.range(0)), 21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvrvfl::mcd_features(seq).sum());
  }
}
BENCHMARK(BM_Mcd)->Arg(200)->Arg(1000);

void BM_Nmbac(benchmark::State& state) {
  const std::string seq =
      random_sequence(static_cast<int>(state.range(0)), 22);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvrvfl::nmbac_features(seq).sum());
  }
}
BENCHMARK(BM_Nmbac)->Arg(200)->Arg(1000);

void BM_PsePssm(benchmark::State& state) {
  const mvrvfl::PssmProfile p =
      random_profile(static_cast<int>(state.range(0)), 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvrvfl::psepssm_features(p).sum());
  }
}
BENCHMARK(BM_PsePssm)->Arg(200)->Arg(1000);

void BM_PssmDwt(benchmark::State& state) {
  const mvrvfl::PssmProfile p =
      random_profile(static_cast<int>(state.range(0)), 24);
  const mvrvfl::Wavelet w =
      state.range(1) == 0 ? mvrvfl::Wavelet::haar : mvrvfl::Wavelet::db4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvrvfl::pssm_dwt_features(p, w).sum());
  }
}
BENCHMARK(BM_PssmDwt)->Args({200, 0})->Args({200, 1})->Args({1000, 0});

void BM_MrmrRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const Matrix x = random_matrix(n, m, 31);
  const std::vector<int> y = random_labels(n, 32);
  for (auto _ : state) {
    const mvrvfl::MrmrRanking r = mvrvfl::mrmr_rank(x, y, 10);
    benchmark::DoNotOptimize(r.order.front());
  }
}
BENCHMARK(BM_MrmrRank)->Args({200, 32})->Args({200, 64});

}  // namespace

BENCHMARK_MAIN();
