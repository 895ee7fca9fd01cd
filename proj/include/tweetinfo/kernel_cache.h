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

#ifndef TWEETINFO_KERNEL_CACHE_H_
#define TWEETINFO_KERNEL_CACHE_H_

#include <cstddef>
#include <list>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "tweetinfo/features.h"

namespace tweetinfo {

// Least-recently-used cache of sigmoid kernel matrix rows over a fixed
// training set. Rows are shared_ptrs, so a row handed out stays valid after
// it is evicted.
class KernelCache {
 public:
  using Row = std::shared_ptr<const std::vector<double>>;

  KernelCache(std::span<const SparseVector> vectors, double gamma,
              double coef0, std::size_t budget_bytes);

  // K(x_i, x_k) for every k.
  Row GetRow(std::size_t i);
  double Diagonal(std::size_t i) const { return diagonal_[i]; }

  std::size_t capacity_rows() const { return capacity_rows_; }
  std::size_t cached_rows() const { return rows_.size(); }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::vector<double> ComputeRow(std::size_t i);

  std::span<const SparseVector> vectors_;
  double gamma_;
  double coef0_;
  std::size_t capacity_rows_;
  std::vector<double> diagonal_;
  std::vector<double> scratch_;  // dense copy of the row's vector

  std::list<std::size_t> lru_;  // front = most recent
  struct Slot {
    Row row;
    std::list<std::size_t>::iterator position;
  };
  std::unordered_map<std::size_t, Slot> rows_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace tweetinfo

#endif  // TWEETINFO_KERNEL_CACHE_H_
