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

// Labeled and unlabeled tweet corpora in the tab-separated shared-task layout
// and the per-tweet probability files exchanged between models.
//
// Corpus file: one tweet per line, `ID<TAB>Text[<TAB>Label]`, UTF-8, LF line
// endings. Label is INFORMATIVE/1 or UNINFORMATIVE/0.
//
// Prediction file: one tweet per line, `ID<TAB>probability`, where the
// probability is P(INFORMATIVE) in [0, 1].

#ifndef TWEETINFO_DATASET_H_
#define TWEETINFO_DATASET_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tweetinfo {

enum class Label : std::uint8_t {
  kUninformative = 0,
  kInformative = 1,
};

inline constexpr std::array<Label, 2> kAllLabels = {Label::kInformative,
                                                    Label::kUninformative};

// "INFORMATIVE" or "UNINFORMATIVE".
std::string_view LabelName(Label label);

// Accepts the names above and the numeric aliases "1" and "0".
std::optional<Label> ParseLabel(std::string_view token);

// +1 for INFORMATIVE, -1 for UNINFORMATIVE.
inline int SignOf(Label label) {
  return label == Label::kInformative ? 1 : -1;
}

struct Tweet {
  std::string id;
  std::string text;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct CorpusEntry {
  Tweet tweet;
  std::optional<Label> label;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

struct ClassCounts {
  std::size_t informative = 0;
  std::size_t uninformative = 0;

  std::size_t of(Label label) const {
    return label == Label::kInformative ? informative : uninformative;
  }
  std::size_t total() const { return informative + uninformative; }

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// An ordered, immutable collection of tweets. Either every entry carries a
// label or none does; ids are non-empty and unique; text holds no TAB or
// newline characters.
class Corpus {
 public:
  Corpus() = default;

  // Throws ValidationError when an invariant above is violated.
  explicit Corpus(std::vector<CorpusEntry> entries);

  const std::vector<CorpusEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // True for a non-empty corpus whose entries all carry labels.
  bool labeled() const { return labeled_; }
  const ClassCounts& class_counts() const { return counts_; }

  std::vector<std::string> Texts() const;
  // Requires labeled(); throws ValidationError otherwise.
  std::vector<Label> Labels() const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<CorpusEntry> entries_;
  ClassCounts counts_;
  bool labeled_ = false;
};

// With `labeled` set every line must have three fields. Otherwise lines may
// have two or three fields, but all lines must agree. A first line of
// `Id<TAB>Text[<TAB>Label]` is a header and skipped.
//
// Throws ParseError (wrong field count), ValidationError (unknown label,
// duplicate or empty id, mixed labeling) or IoError. Error messages name the
// 1-based line number.
Corpus LoadCorpus(const std::filesystem::path& path, bool labeled);
Corpus ParseCorpus(std::string_view content, bool labeled,
                   const std::string& source = "<memory>");

void WriteCorpus(const std::filesystem::path& path, const Corpus& corpus);
std::string FormatCorpus(const Corpus& corpus);

// Splits a labeled corpus into (train, validation) class by class. Each class
// contributes floor(fraction * count) tweets to train; the leftover train
// slots needed to reach round(fraction * size) go to the classes with the
// largest fractional remainders. Which tweets are chosen is decided by a
// Fisher-Yates shuffle seeded with `seed`. Both outputs keep input order.
//
// Throws InvalidArgument if fraction is not in (0, 1), ValidationError if
// the corpus is unlabeled or has a single class.
std::pair<Corpus, Corpus> StratifiedSplit(const Corpus& corpus,
                                          double train_fraction,
                                          std::uint64_t seed);

// Per-tweet P(INFORMATIVE) from a single model.
class PredictionSet {
 public:
  using Entry = std::pair<std::string, double>;

  PredictionSet() = default;
  // Throws ValidationError on duplicate/empty ids or a probability outside
  // [0, 1].
  PredictionSet(std::string model_name, std::vector<Entry> entries);

  const std::string& model_name() const { return model_name_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::string model_name_;
  std::vector<Entry> entries_;
};

// Formats a probability with at least six decimals, adding digits until the
// text parses back to the identical double.
std::string FormatProbability(double p);

// Throws InvalidArgument for an empty set and IoError when the file cannot
// be written.
void WritePredictions(const std::filesystem::path& path,
                      const PredictionSet& preds);
std::string FormatPredictions(const PredictionSet& preds);

// `model_name` defaults to the file stem.
PredictionSet LoadPredictions(const std::filesystem::path& path,
                              std::optional<std::string> model_name = {});
PredictionSet ParsePredictions(std::string_view content,
                               std::string model_name,
                               const std::string& source = "<memory>");

// Whole-file helpers shared by the loaders. Throw IoError.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Splits on '\n'. A single trailing newline does not produce an extra empty
// line.
std::vector<std::string_view> SplitLines(std::string_view content);
std::vector<std::string_view> SplitFields(std::string_view line,
                                          char separator = '\t');

}  // namespace tweetinfo

#endif  // TWEETINFO_DATASET_H_
