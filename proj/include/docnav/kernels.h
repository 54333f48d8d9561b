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

#ifndef DOCNAV_KERNELS_H_
#define DOCNAV_KERNELS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

// Data-parallel inner loops of the pipeline. Every kernel has a serial
// reference path and an OpenMP path; both must return identical results,
// which the kernel tests check on random inputs.
namespace docnav::kernels {

enum class ExecPolicy { kSerial, kParallel };

// Runs fn(i) for i in [0, n). Iterations must be independent.
void for_each_index(size_t n, ExecPolicy policy,
                    const std::function<void(size_t)> &fn);

// Sorted, duplicate-free hash list of one document.
using GramList = std::vector<uint64_t>;

size_t intersection_size(const GramList &a, const GramList &b);

// max(|a∩b|/|a|, |a∩b|/|b|); 0 when either list is empty.
double overlap_ratio(const GramList &a, const GramList &b);

struct PairScore {
  uint32_t first;
  uint32_t second;
  double score;

  bool operator==(const PairScore &) const = default;
};

// All pairs (i<j) with overlap_ratio >= threshold, in (i, j) order.
std::vector<PairScore> overlap_pairs(std::span<const GramList> lists,
                                     double threshold, ExecPolicy policy);

// Sparse non-negative vector over interned dimension ids, ids ascending.
struct SparseVector {
  std::vector<uint32_t> ids;
  std::vector<double> weights;

  double norm() const;
};

double dot(const SparseVector &a, const SparseVector &b);

// Dense row-major n×n cosine matrix, diagonal included.
std::vector<double> cosine_matrix(std::span<const SparseVector> vectors,
                                  ExecPolicy policy);

// Similarities closer than this are ties for merge ordering.
inline constexpr double kTieResolution = 1e-12;

// Quantized similarity used for ordering and threshold tests.
int64_t quantize(double similarity);

// Candidate merge between two active clusters, identified by their
// representative index (the smallest member index).
struct Merge {
  uint32_t first;
  uint32_t second;
  double similarity;
};

// Best merge among active clusters: highest quantized similarity, ties to
// the lowest (min, max) representative pair. score(i, j) is called with
// i < j from several threads under the parallel policy.
std::optional<Merge> best_merge(std::span<const uint32_t> active,
                                const std::function<double(uint32_t, uint32_t)> &score,
                                ExecPolicy policy);

// Dense rows×cols score matrix; fn must be thread-safe.
std::vector<double> score_grid(size_t rows, size_t cols,
                               const std::function<double(size_t, size_t)> &fn,
                               ExecPolicy policy);

}  // namespace docnav::kernels

#endif  // DOCNAV_KERNELS_H_
