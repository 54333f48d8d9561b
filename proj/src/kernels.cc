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

#include "docnav/kernels.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <utility>

namespace docnav::kernels {

void for_each_index(size_t n, ExecPolicy policy,
                    const std::function<void(size_t)> &fn) {
  if (policy == ExecPolicy::kSerial) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto count = static_cast<int64_t>(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (int64_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<size_t>(i));
    } catch (...) {
#pragma omp critical(docnav_for_each_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

size_t intersection_size(const GramList &a, const GramList &b) {
  size_t shared = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

double overlap_ratio(const GramList &a, const GramList &b) {
  if (a.empty() || b.empty()) return 0.0;
  const double shared = static_cast<double>(intersection_size(a, b));
  return std::max(shared / static_cast<double>(a.size()),
                  shared / static_cast<double>(b.size()));
}

std::vector<PairScore> overlap_pairs(std::span<const GramList> lists,
                                     double threshold, ExecPolicy policy) {
  const auto n = static_cast<int64_t>(lists.size());
  if (policy == ExecPolicy::kSerial) {
    std::vector<PairScore> out;
    for (int64_t i = 0; i < n; ++i) {
      for (int64_t j = i + 1; j < n; ++j) {
        double r = overlap_ratio(lists[i], lists[j]);
        if (r >= threshold && r > 0.0)
          out.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), r});
      }
    }
    return out;
  }

  // One bucket per row keeps the merged output in (i, j) order.
  std::vector<std::vector<PairScore>> rows(lists.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = i + 1; j < n; ++j) {
      double r = overlap_ratio(lists[i], lists[j]);
      if (r >= threshold && r > 0.0)
        rows[i].push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), r});
    }
  }
  std::vector<PairScore> out;
  for (auto &row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (double w : weights) sum += w * w;
  return std::sqrt(sum);
}

double dot(const SparseVector &a, const SparseVector &b) {
  double sum = 0.0;
  size_t i = 0;
  size_t j = 0;
  while (i < a.ids.size() && j < b.ids.size()) {
    if (a.ids[i] < b.ids[j]) {
      ++i;
    } else if (b.ids[j] < a.ids[i]) {
      ++j;
    } else {
      sum += a.weights[i] * b.weights[j];
      ++i;
      ++j;
    }
  }
  return sum;
}

namespace {

double cosine_of(const SparseVector &a, double na, const SparseVector &b,
                 double nb) {
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

}  // namespace

std::vector<double> cosine_matrix(std::span<const SparseVector> vectors,
                                  ExecPolicy policy) {
  const size_t n = vectors.size();
  std::vector<double> norms(n);
  for (size_t i = 0; i < n; ++i) norms[i] = vectors[i].norm();
  std::vector<double> m(n * n, 0.0);
  auto row = [&](size_t i) {
    m[i * n + i] = norms[i] > 0.0 ? 1.0 : 0.0;
    for (size_t j = i + 1; j < n; ++j) {
      double c = cosine_of(vectors[i], norms[i], vectors[j], norms[j]);
      m[i * n + j] = c;
      m[j * n + i] = c;
    }
  };
  for_each_index(n, policy, row);
  return m;
}

int64_t quantize(double similarity) {
  return std::llround(similarity / kTieResolution);
}

namespace {

struct Candidate {
  int64_t key = -1;
  uint32_t first = 0;
  uint32_t second = 0;
  double similarity = 0.0;
  bool valid = false;
};

bool better(const Candidate &a, const Candidate &b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.key != b.key) return a.key > b.key;
  return std::pair(a.first, a.second) < std::pair(b.first, b.second);
}

Candidate make_candidate(uint32_t x, uint32_t y, double s) {
  if (y < x) std::swap(x, y);
  return {quantize(s), x, y, s, true};
}

}  // namespace

std::optional<Merge> best_merge(
    std::span<const uint32_t> active,
    const std::function<double(uint32_t, uint32_t)> &score,
    ExecPolicy policy) {
  const auto n = static_cast<int64_t>(active.size());
  Candidate best;
  if (policy == ExecPolicy::kSerial) {
    for (int64_t a = 0; a < n; ++a) {
      for (int64_t b = a + 1; b < n; ++b) {
        uint32_t x = std::min(active[a], active[b]);
        uint32_t y = std::max(active[a], active[b]);
        Candidate c = make_candidate(x, y, score(x, y));
        if (better(c, best)) best = c;
      }
    }
  } else {
#pragma omp parallel
    {
      Candidate local;
#pragma omp for schedule(dynamic, 4) nowait
      for (int64_t a = 0; a < n; ++a) {
        for (int64_t b = a + 1; b < n; ++b) {
          uint32_t x = std::min(active[a], active[b]);
          uint32_t y = std::max(active[a], active[b]);
          Candidate c = make_candidate(x, y, score(x, y));
          if (better(c, local)) local = c;
        }
      }
#pragma omp critical(docnav_best_merge)
      {
        if (better(local, best)) best = local;
      }
    }
  }
  if (!best.valid) return std::nullopt;
  return Merge{best.first, best.second, best.similarity};
}

std::vector<double> score_grid(size_t rows, size_t cols,
                               const std::function<double(size_t, size_t)> &fn,
                               ExecPolicy policy) {
  std::vector<double> grid(rows * cols, 0.0);
  for_each_index(rows, policy, [&](size_t i) {
    for (size_t j = 0; j < cols; ++j) grid[i * cols + j] = fn(i, j);
  });
  return grid;
}

}  // namespace docnav::kernels
