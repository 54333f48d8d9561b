// Copyright 2026 The docnav Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial vs OpenMP timings of the pairwise kernels. Inputs are synthetic
// and seeded, so both policies see identical work.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "docnav/kernels.h"

namespace {

using docnav::kernels::ExecPolicy;
using docnav::kernels::GramList;
using docnav::kernels::SparseVector;

ExecPolicy policy_of(const benchmark::State &state) {
  return state.range(1) ? ExecPolicy::kParallel : ExecPolicy::kSerial;
}

std::vector<GramList> gram_lists(size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<uint64_t> gram(0, 20000);
  std::vector<GramList> lists(n);
  for (auto &l : lists) {
    l.resize(300);
    for (auto &g : l) g = gram(rng);
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return lists;
}

std::vector<SparseVector> sparse_vectors(size_t n) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<uint32_t> id(0, 5000);
  std::uniform_real_distribution<double> w(0.1, 50.0);
  std::vector<SparseVector> out(n);
  for (auto &v : out) {
    v.ids.resize(40);
    for (auto &i : v.ids) i = id(rng);
    std::sort(v.ids.begin(), v.ids.end());
    v.ids.erase(std::unique(v.ids.begin(), v.ids.end()), v.ids.end());
    v.weights.resize(v.ids.size());
    for (auto &x : v.weights) x = w(rng);
  }
  return out;
}

void BM_OverlapPairs(benchmark::State &state) {
  const auto lists = gram_lists(static_cast<size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(docnav::kernels::overlap_pairs(lists, 0.5, policy_of(state)));
}

void BM_CosineMatrix(benchmark::State &state) {
  const auto vectors = sparse_vectors(static_cast<size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(docnav::kernels::cosine_matrix(vectors, policy_of(state)));
}

void BM_BestMerge(benchmark::State &state) {
  const auto vectors = sparse_vectors(static_cast<size_t>(state.range(0)));
  const auto sim = docnav::kernels::cosine_matrix(vectors, ExecPolicy::kSerial);
  const size_t n = vectors.size();
  std::vector<uint32_t> active(n);
  std::iota(active.begin(), active.end(), 0u);
  auto score = [&](uint32_t a, uint32_t b) { return sim[a * n + b]; };
  for (auto _ : state)
    benchmark::DoNotOptimize(docnav::kernels::best_merge(active, score, policy_of(state)));
}

void BM_ScoreGrid(benchmark::State &state) {
  const auto vectors = sparse_vectors(static_cast<size_t>(state.range(0)));
  const size_t half = vectors.size() / 2;
  auto fn = [&](size_t i, size_t j) { return docnav::kernels::dot(vectors[i], vectors[half + j]); };
  for (auto _ : state)
    benchmark::DoNotOptimize(docnav::kernels::score_grid(half, half, fn, policy_of(state)));
}

// Second argument: 0 serial, 1 OpenMP.
BENCHMARK(BM_OverlapPairs)->ArgsProduct({{200, 800}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosineMatrix)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestMerge)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreGrid)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
