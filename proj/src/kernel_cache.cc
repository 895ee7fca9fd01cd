// Copyright 2026 The tweetinfo Authors
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

#include "tweetinfo/kernel_cache.h"

#include <algorithm>
#include <cmath>

#include "tweetinfo/svm.h"

namespace tweetinfo {

KernelCache::KernelCache(std::span<const SparseVector> vectors, double gamma,
                         double coef0, std::size_t budget_bytes)
    : vectors_(vectors), gamma_(gamma), coef0_(coef0) {
  const std::size_t row_bytes =
      std::max<std::size_t>(1, vectors.size()) * sizeof(double);
  capacity_rows_ = std::max<std::size_t>(2, budget_bytes / row_bytes);
  diagonal_.reserve(vectors.size());
  std::size_t dim = 0;
  for (const SparseVector& v : vectors) {
    diagonal_.push_back(SigmoidKernel(v, v, gamma, coef0));
    dim = std::max(dim, v.dimension());
  }
  scratch_.assign(dim, 0.0);
}

std::vector<double> KernelCache::ComputeRow(std::size_t i) {
  const SparseVector& xi = vectors_[i];
  for (const SparseEntry& e : xi.entries()) scratch_[e.index] = e.weight;
  std::vector<double> row(vectors_.size());
  for (std::size_t k = 0; k < vectors_.size(); ++k) {
    double dot = 0.0;
    for (const SparseEntry& e : vectors_[k].entries()) {
      dot += scratch_[e.index] * e.weight;
    }
    row[k] = std::tanh(gamma_ * dot + coef0_);
  }
  for (const SparseEntry& e : xi.entries()) scratch_[e.index] = 0.0;
  return row;
}

KernelCache::Row KernelCache::GetRow(std::size_t i) {
  if (auto it = rows_.find(i); it != rows_.end()) {
    ++hits_;
    lru_.splice(lru_.begin(), lru_, it->second.position);
    return it->second.row;
  }
  ++misses_;
  if (rows_.size() >= capacity_rows_) {
    rows_.erase(lru_.back());
    lru_.pop_back();
  }
  auto row = std::make_shared<const std::vector<double>>(ComputeRow(i));
  lru_.push_front(i);
  rows_.emplace(i, Slot{row, lru_.begin()});
  return row;
}

}  // namespace tweetinfo
