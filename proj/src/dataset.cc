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

#include "tweetinfo/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "tweetinfo/error.h"
#include "tweetinfo/random.h"
#include "tweetinfo/text_format.h"

namespace tweetinfo {

std::string_view LabelName(Label label) {
  return label == Label::kInformative ? "INFORMATIVE" : "UNINFORMATIVE";
}

std::optional<Label> ParseLabel(std::string_view token) {
  if (token == "INFORMATIVE" || token == "1") return Label::kInformative;
  if (token == "UNINFORMATIVE" || token == "0") return Label::kUninformative;
  return std::nullopt;
}

Corpus::Corpus(std::vector<CorpusEntry> entries) : entries_(std::move(entries)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(entries_.size());
  std::size_t with_label = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const CorpusEntry& e = entries_[i];
    const std::string where = "entry " + std::to_string(i + 1);
    if (e.tweet.id.empty()) throw ValidationError(where + ": empty tweet id");
    if (e.tweet.id.find_first_of("\t\n") != std::string::npos ||
        e.tweet.text.find_first_of("\t\n") != std::string::npos) {
      throw ValidationError(where + ": TAB or newline inside a field");
    }
    if (!seen.insert(e.tweet.id).second) {
      throw ValidationError(where + ": duplicate tweet id '" + e.tweet.id +
                            "'");
    }
    if (e.label) {
      ++with_label;
      if (*e.label == Label::kInformative) {
        ++counts_.informative;
      } else {
        ++counts_.uninformative;
      }
    }
  }
  if (with_label != 0 && with_label != entries_.size()) {
    throw ValidationError("corpus mixes labeled and unlabeled entries");
  }
  labeled_ = !entries_.empty() && with_label == entries_.size();
}

std::vector<std::string> Corpus::Texts() const {
  std::vector<std::string> texts;
  texts.reserve(entries_.size());
  for (const CorpusEntry& e : entries_) texts.push_back(e.tweet.text);
  return texts;
}

std::vector<Label> Corpus::Labels() const {
  if (!labeled_) throw ValidationError("corpus is not labeled");
  std::vector<Label> labels;
  labels.reserve(entries_.size());
  for (const CorpusEntry& e : entries_) labels.push_back(*e.label);
  return labels;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return content;
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::vector<std::string_view> SplitLines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line,
                                          char separator) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(separator, start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

namespace {

bool IsHeader(const std::vector<std::string_view>& fields) {
  return (fields.size() == 2 || fields.size() == 3) && fields[0] == "Id" &&
         fields[1] == "Text" && (fields.size() == 2 || fields[2] == "Label");
}

}  // namespace

Corpus ParseCorpus(std::string_view content, bool labeled,
                   const std::string& source) {
  std::vector<CorpusEntry> entries;
  std::unordered_set<std::string_view> seen;
  std::optional<std::size_t> columns;
  if (labeled) columns = 3;

  const auto lines = SplitLines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const auto fields = SplitFields(lines[n]);
    if (n == 0 && IsHeader(fields)) continue;
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(source, line_no,
                       "expected ID<TAB>Text[<TAB>Label], got " +
                           std::to_string(fields.size()) + " fields");
    }
    if (columns && *columns != fields.size()) {
      if (labeled) {
        throw ParseError(source, line_no,
                         "expected 3 fields (ID, Text, Label), got " +
                             std::to_string(fields.size()));
      }
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": corpus mixes labeled and unlabeled lines");
    }
    columns = fields.size();

    if (fields[0].empty()) {
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": empty tweet id");
    }
    if (!seen.insert(fields[0]).second) {
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": duplicate tweet id '" + std::string(fields[0]) +
                            "'");
    }
    CorpusEntry entry{{std::string(fields[0]), std::string(fields[1])}, {}};
    if (fields.size() == 3) {
      entry.label = ParseLabel(fields[2]);
      if (!entry.label) {
        throw ValidationError(source + ":" + std::to_string(line_no) +
                              ": unknown label '" + std::string(fields[2]) +
                              "'");
      }
    }
    entries.push_back(std::move(entry));
  }
  return Corpus(std::move(entries));
}

Corpus LoadCorpus(const std::filesystem::path& path, bool labeled) {
  return ParseCorpus(ReadFile(path), labeled, path.string());
}

std::string FormatCorpus(const Corpus& corpus) {
  std::string out;
  for (const CorpusEntry& e : corpus.entries()) {
    out += e.tweet.id;
    out += '\t';
    out += e.tweet.text;
    if (e.label) {
      out += '\t';
      out += LabelName(*e.label);
    }
    out += '\n';
  }
  return out;
}

void WriteCorpus(const std::filesystem::path& path, const Corpus& corpus) {
  WriteFile(path, FormatCorpus(corpus));
}

std::pair<Corpus, Corpus> StratifiedSplit(const Corpus& corpus,
                                          double train_fraction,
                                          std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1)");
  }
  if (!corpus.labeled()) {
    throw ValidationError("stratified split needs a labeled corpus");
  }
  for (Label label : kAllLabels) {
    if (corpus.class_counts().of(label) == 0) {
      throw ValidationError("stratified split needs both classes; no " +
                            std::string(LabelName(label)) + " tweets");
    }
  }

  // Largest-remainder apportionment of round(fraction * size) train slots.
  // The epsilon keeps products such as 0.8 * 3775 = 3020.0000000000005 from
  // being misread by floor().
  constexpr double kEps = 1e-9;
  const auto target_total = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(corpus.size()) + 0.5 +
                 kEps));
  std::array<std::size_t, 2> quota{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < kAllLabels.size(); ++c) {
    const double exact =
        train_fraction *
        static_cast<double>(corpus.class_counts().of(kAllLabels[c]));
    quota[c] = static_cast<std::size_t>(std::floor(exact + kEps));
    remainder[c] = std::max(0.0, exact - static_cast<double>(quota[c]));
    assigned += quota[c];
  }
  // At most one leftover slot per class; ties favour INFORMATIVE (index 0).
  std::array<std::size_t, 2> order = {0, 1};
  if (remainder[1] > remainder[0] + kEps) std::swap(order[0], order[1]);
  for (std::size_t k = 0; k < order.size() && assigned < target_total; ++k) {
    ++quota[order[k]];
    ++assigned;
  }

  SplitMix64 rng(seed);
  std::vector<bool> to_train(corpus.size(), false);
  for (std::size_t c = 0; c < kAllLabels.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (*corpus.entries()[i].label == kAllLabels[c]) members.push_back(i);
    }
    Shuffle(members, rng);
    for (std::size_t k = 0; k < quota[c]; ++k) to_train[members[k]] = true;
  }

  std::vector<CorpusEntry> train, valid;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (to_train[i] ? train : valid).push_back(corpus.entries()[i]);
  }
  return {Corpus(std::move(train)), Corpus(std::move(valid))};
}

PredictionSet::PredictionSet(std::string model_name, std::vector<Entry> entries)
    : model_name_(std::move(model_name)), entries_(std::move(entries)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(entries_.size());
  for (const auto& [id, p] : entries_) {
    if (id.empty()) throw ValidationError("prediction with an empty id");
    if (id.find_first_of("\t\r\n") != std::string::npos) {
      throw ValidationError("prediction id holds a TAB or newline");
    }
    if (!seen.insert(id).second) {
      throw ValidationError("duplicate prediction id '" + id + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("probability for '" + id + "' is outside [0, 1]");
    }
  }
}

std::string FormatProbability(double p) {
  char buf[64];
  for (int precision = 6; precision <= 17; ++precision) {
    auto res = std::to_chars(buf, buf + sizeof(buf), p,
                             std::chars_format::fixed, precision);
    double back = 0.0;
    std::from_chars(buf, res.ptr, back);
    if (back == p) return std::string(buf, res.ptr);
  }
  // Very small values: shortest round-trip form, possibly with an exponent.
  auto res = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, res.ptr);
}

std::string FormatPredictions(const PredictionSet& preds) {
  std::string out;
  for (const auto& [id, p] : preds.entries()) {
    out += id;
    out += '\t';
    out += FormatProbability(p);
    out += '\n';
  }
  return out;
}

void WritePredictions(const std::filesystem::path& path,
                      const PredictionSet& preds) {
  if (preds.empty()) throw InvalidArgument("refusing to write an empty prediction set");
  WriteFile(path, FormatPredictions(preds));
}

PredictionSet ParsePredictions(std::string_view content,
                               std::string model_name,
                               const std::string& source) {
  std::vector<PredictionSet::Entry> entries;
  const auto lines = SplitLines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto fields = SplitFields(lines[n]);
    if (fields.size() != 2) {
      throw ParseError(source, n + 1,
                       "expected ID<TAB>probability, got " +
                           std::to_string(fields.size()) + " fields");
    }
    const double p = ParseDouble(fields[1], source, n + 1);
    entries.emplace_back(std::string(fields[0]), p);
  }
  try {
    return PredictionSet(std::move(model_name), std::move(entries));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

PredictionSet LoadPredictions(const std::filesystem::path& path,
                              std::optional<std::string> model_name) {
  return ParsePredictions(ReadFile(path),
                          model_name.value_or(path.stem().string()),
                          path.string());
}

}  // namespace tweetinfo
