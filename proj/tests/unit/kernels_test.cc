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


#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "docnav/kernels.h"

namespace docnav::kernels {
namespace {

constexpr auto kSerial = ExecPolicy::kSerial;
constexpr auto kParallel = ExecPolicy::kParallel;

std::vector<GramList> random_lists(std::mt19937 &rng, size_t n) {
  std::vector<GramList> out(n);
  for (auto &l : out) {
    std::set<uint64_t> s;
    const size_t len = rng() % 40;
    for (size_t i = 0; i < len; ++i) s.insert(rng() % 60);
    l.assign(s.begin(), s.end());
  }
  return out;
}

std::vector<SparseVector> random_vectors(std::mt19937 &rng, size_t n) {
  std::vector<SparseVector> out(n);
  std::uniform_real_distribution<double> w(0.0, 5.0);
  for (auto &v : out) {
    for (uint32_t id = 0; id < 30; ++id) {
      if (rng() % 4 == 0) {
        v.ids.push_back(id);
        v.weights.push_back(w(rng));
      }
    }
  }
  return out;
}

TEST(Kernels, OverlapPairsSerialEqualsParallel) {
  std::mt19937 rng(1);
  for (int round = 0; round < 20; ++round) {
    auto lists = random_lists(rng, 60);
    for (double t : {0.2, 0.5, 0.9})
      EXPECT_EQ(overlap_pairs(lists, t, kSerial), overlap_pairs(lists, t, kParallel));
  }
}

TEST(Kernels, CosineMatrixSerialEqualsParallel) {
  std::mt19937 rng(2);
  auto vs = random_vectors(rng, 80);
  auto serial = cosine_matrix(vs, kSerial);
  auto parallel = cosine_matrix(vs, kParallel);
  EXPECT_EQ(serial, parallel);  // bitwise: each cell is computed once
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = 0; j < vs.size(); ++j) EXPECT_EQ(serial[i * 80 + j], serial[j * 80 + i]);
}

TEST(Kernels, BestMergeSerialEqualsParallel) {
  std::mt19937 rng(3);
  for (int round = 0; round < 50; ++round) {
    const size_t n = 2 + rng() % 40;
    std::vector<double> m(n * n);
    // Coarse values force many ties.
    for (auto &x : m) x = (rng() % 5) / 4.0;
    std::vector<uint32_t> active;
    for (uint32_t i = 0; i < n; ++i)
      if (rng() % 3) active.push_back(i);
    auto score = [&](uint32_t i, uint32_t j) { return m[i * n + j]; };
    auto a = best_merge(active, score, kSerial);
    auto b = best_merge(active, score, kParallel);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (!a) continue;
    EXPECT_EQ(a->first, b->first);
    EXPECT_EQ(a->second, b->second);
    EXPECT_EQ(a->similarity, b->similarity);
  }
}

TEST(Kernels, ScoreGridAndExceptions) {
  auto fn = [](size_t i, size_t j) { return double(i * 31 + j) / 7.0; };
  EXPECT_EQ(score_grid(17, 9, fn, kSerial), score_grid(17, 9, fn, kParallel));
  EXPECT_THROW(for_each_index(100, kParallel,
                              [](size_t i) {
                                if (i == 42) throw std::runtime_error("boom");
                              }),
               std::runtime_error);
}

TEST(Kernels, QuantizeAndOverlap) {
  EXPECT_EQ(quantize(0.5), quantize(0.5 + 1e-14));
  EXPECT_LT(quantize(0.5), quantize(0.5 + 1e-11));
  EXPECT_DOUBLE_EQ(overlap_ratio(GramList{1, 2}, GramList{2, 3, 4}), 0.5);
  EXPECT_DOUBLE_EQ(overlap_ratio(GramList{}, GramList{2}), 0.0);
  EXPECT_EQ(intersection_size({1, 3, 5, 7}, {3, 4, 5}), 2u);
}

}  // namespace
}  // namespace docnav::kernels
