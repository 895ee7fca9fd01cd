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

#include "tweetinfo/fusion_eval.h"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "tweetinfo/error.h"

namespace tweetinfo {

namespace {

std::vector<std::string> IdsOf(const PredictionSet& set) {
  std::vector<std::string> ids;
  ids.reserve(set.size());
  for (const auto& [id, p] : set.entries()) ids.push_back(id);
  return ids;
}

std::vector<std::string> IdsOf(const LabeledIds& items) {
  std::vector<std::string> ids;
  ids.reserve(items.size());
  for (const auto& [id, label] : items) ids.push_back(id);
  return ids;
}

}  // namespace

std::string DescribeMissingIds(std::span<const std::string> expected,
                               std::span<const std::string> actual,
                               std::size_t limit) {
  std::unordered_set<std::string_view> present(actual.begin(), actual.end());
  std::string out;
  std::size_t listed = 0;
  for (const std::string& id : expected) {
    if (present.count(id)) continue;
    if (listed == limit) {
      out += ", ...";
      break;
    }
    if (listed > 0) out += ", ";
    out += id;
    ++listed;
  }
  return out;
}

PredictionSet Fuse(std::span<const PredictionSet> sets) {
  if (sets.empty()) throw InvalidArgument("nothing to fuse");
  const PredictionSet& first = sets.front();
  const auto first_ids = IdsOf(first);

  std::vector<std::unordered_map<std::string_view, double>> lookup;
  lookup.reserve(sets.size());
  for (const PredictionSet& set : sets) {
    const auto ids = IdsOf(set);
    if (set.size() != first.size() ||
        !DescribeMissingIds(first_ids, ids).empty()) {
      std::string missing = DescribeMissingIds(first_ids, ids);
      std::string extra = DescribeMissingIds(ids, first_ids);
      std::string msg = "prediction sets '" + first.model_name() + "' and '" +
                        set.model_name() + "' cover different ids";
      if (!missing.empty()) msg += "; missing from '" + set.model_name() + "': " + missing;
      if (!extra.empty()) msg += "; missing from '" + first.model_name() + "': " + extra;
      throw ValidationError(msg);
    }
    auto& m = lookup.emplace_back();
    m.reserve(set.size());
    for (const auto& [id, p] : set.entries()) m.emplace(id, p);
  }

  std::vector<PredictionSet::Entry> fused;
  fused.reserve(first.size());
  std::vector<double> values(sets.size());
  for (const std::string& id : first_ids) {
    for (std::size_t k = 0; k < sets.size(); ++k) values[k] = lookup[k].at(id);
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    // Rounding can push the quotient a hair outside the input range.
    const double mean = std::clamp(sum / static_cast<double>(values.size()),
                                   values.front(), values.back());
    fused.emplace_back(id, mean);
  }
  return PredictionSet("ensemble", std::move(fused));
}

LabeledIds Threshold(const PredictionSet& preds, double cutoff) {
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) {
    throw InvalidArgument("cutoff must lie in [0, 1]");
  }
  LabeledIds out;
  out.reserve(preds.size());
  for (const auto& [id, p] : preds.entries()) {
    out.emplace_back(id, p >= cutoff ? Label::kInformative
                                     : Label::kUninformative);
  }
  return out;
}

LabeledIds GoldLabels(const Corpus& corpus) {
  if (!corpus.labeled()) throw ValidationError("gold corpus is not labeled");
  LabeledIds out;
  out.reserve(corpus.size());
  for (const CorpusEntry& e : corpus.entries()) {
    out.emplace_back(e.tweet.id, *e.label);
  }
  return out;
}

MetricsReport MetricsFromCounts(const ConfusionCounts& counts) {
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  MetricsReport r;
  r.counts = counts;
  r.precision = ratio(counts.tp, counts.tp + counts.fp);
  r.recall = ratio(counts.tp, counts.tp + counts.fn);
  const double denom = r.precision + r.recall;
  r.f1 = denom == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / denom;
  return r;
}

MetricsReport ComputeMetrics(const LabeledIds& gold,
                             const LabeledIds& predicted) {
  std::unordered_map<std::string_view, Label> predicted_by_id;
  predicted_by_id.reserve(predicted.size());
  for (const auto& [id, label] : predicted) {
    if (!predicted_by_id.emplace(id, label).second) {
      throw ValidationError("duplicate predicted id '" + id + "'");
    }
  }
  std::unordered_set<std::string_view> gold_ids;
  gold_ids.reserve(gold.size());
  for (const auto& [id, label] : gold) {
    if (!gold_ids.insert(id).second) {
      throw ValidationError("duplicate gold id '" + id + "'");
    }
  }
  if (gold.size() != predicted.size() ||
      !DescribeMissingIds(IdsOf(gold), IdsOf(predicted)).empty()) {
    std::string msg = "gold and predicted ids differ";
    const auto missing = DescribeMissingIds(IdsOf(gold), IdsOf(predicted));
    const auto extra = DescribeMissingIds(IdsOf(predicted), IdsOf(gold));
    if (!missing.empty()) msg += "; no prediction for: " + missing;
    if (!extra.empty()) msg += "; not in gold: " + extra;
    throw ValidationError(msg);
  }

  ConfusionCounts c;
  for (const auto& [id, truth] : gold) {
    const Label guess = predicted_by_id.at(id);
    const bool pos_truth = truth == Label::kInformative;
    const bool pos_guess = guess == Label::kInformative;
    if (pos_truth && pos_guess) {
      ++c.tp;
    } else if (!pos_truth && pos_guess) {
      ++c.fp;
    } else if (pos_truth) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return MetricsFromCounts(c);
}

std::string MetricsReport::ToJson() const {
  nlohmann::ordered_json j;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["tp"] = counts.tp;
  j["fp"] = counts.fp;
  j["fn"] = counts.fn;
  j["tn"] = counts.tn;
  return j.dump();
}

std::string MetricsReport::ToText() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "Precision  %6.2f%%\n"
                "Recall     %6.2f%%\n"
                "F1-score   %6.2f%%\n"
                "            gold+  gold-\n"
                "predicted+ %6zu %6zu\n"
                "predicted- %6zu %6zu\n",
                100.0 * precision, 100.0 * recall, 100.0 * f1, counts.tp,
                counts.fp, counts.fn, counts.tn);
  return buf;
}

}  // namespace tweetinfo
