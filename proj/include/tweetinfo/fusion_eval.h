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

// Probability-averaging ensemble and precision/recall/F1 scoring with
// INFORMATIVE as the positive class.

#ifndef TWEETINFO_FUSION_EVAL_H_
#define TWEETINFO_FUSION_EVAL_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tweetinfo/dataset.h"

namespace tweetinfo {

using LabeledIds = std::vector<std::pair<std::string, Label>>;

inline constexpr double kDefaultCutoff = 0.5;

// Per-id arithmetic mean of the input probabilities, in the id order of the
// first set, named "ensemble". The mean is taken over the values in sorted
// order, so the result does not depend on the order of `sets`.
//
// Throws InvalidArgument for an empty list and ValidationError when the sets
// do not cover the same ids (the message lists up to five missing ids).
PredictionSet Fuse(std::span<const PredictionSet> sets);

// probability >= cutoff -> INFORMATIVE. Throws InvalidArgument unless cutoff
// is in [0, 1].
LabeledIds Threshold(const PredictionSet& preds,
                     double cutoff = kDefaultCutoff);

LabeledIds GoldLabels(const Corpus& corpus);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&,
                         const ConfusionCounts&) = default;
};

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;

  // {"precision":..,"recall":..,"f1":..,"tp":..,"fp":..,"fn":..,"tn":..}
  std::string ToJson() const;
  std::string ToText() const;
};

// 0/0 is taken as 0 for precision, recall and F1.
MetricsReport MetricsFromCounts(const ConfusionCounts& counts);

// Matches gold and predicted by id. Throws ValidationError when the id sets
// differ (listing up to five missing ids) or an id repeats.
MetricsReport ComputeMetrics(const LabeledIds& gold,
                             const LabeledIds& predicted);

// Lists up to `limit` ids of `expected` absent from `actual`, comma-separated,
// with a trailing ", ..." when more are missing.
std::string DescribeMissingIds(std::span<const std::string> expected,
                               std::span<const std::string> actual,
                               std::size_t limit = 5);

}  // namespace tweetinfo

#endif  // TWEETINFO_FUSION_EVAL_H_
