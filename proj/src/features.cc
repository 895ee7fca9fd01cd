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

#include "tweetinfo/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "tweetinfo/dataset.h"
#include "tweetinfo/error.h"
#include "tweetinfo/text_format.h"

namespace tweetinfo {

SparseVector::SparseVector(std::vector<SparseEntry> entries,
                           std::size_t dimension)
    : entries_(std::move(entries)), dimension_(dimension) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index >= dimension_) {
      throw InvalidArgument("sparse index out of range");
    }
    if (i > 0 && entries_[i].index <= entries_[i - 1].index) {
      throw InvalidArgument("sparse indices must be strictly increasing");
    }
    if (!std::isfinite(entries_[i].weight)) {
      throw InvalidArgument("non-finite sparse weight");
    }
  }
}

double SparseVector::Norm() const {
  double sum = 0.0;
  for (const SparseEntry& e : entries_) sum += e.weight * e.weight;
  return std::sqrt(sum);
}

double Dot(const SparseVector& a, const SparseVector& b) {
  if (a.dimension() != b.dimension()) {
    throw InvalidArgument("dimension mismatch: " +
                          std::to_string(a.dimension()) + " vs " +
                          std::to_string(b.dimension()));
  }
  const auto& x = a.entries();
  const auto& y = b.entries();
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].index == y[j].index) {
      sum += x[i++].weight * y[j++].weight;
    } else if (x[i].index < y[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

double SmoothedIdf(std::size_t n_documents, std::size_t document_frequency) {
  return std::log((1.0 + static_cast<double>(n_documents)) /
                  (1.0 + static_cast<double>(document_frequency))) +
         1.0;
}

TfIdfVocabulary TfIdfVocabulary::Fit(std::span<const std::string> documents,
                                     std::size_t min_df) {
  if (documents.empty()) throw InvalidArgument("cannot fit on an empty corpus");
  if (min_df < 1) throw InvalidArgument("min_df must be at least 1");

  std::map<std::string, std::size_t> df;
  for (const std::string& doc : documents) {
    auto tokens = Tokenize(doc);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (std::string& t : tokens) ++df[std::move(t)];
  }

  TfIdfVocabulary vocab;
  vocab.n_documents_ = documents.size();
  vocab.min_df_ = min_df;
  for (auto& [term, count] : df) {
    if (count < min_df) continue;
    vocab.terms_.push_back({term, count, SmoothedIdf(documents.size(), count)});
  }
  if (vocab.terms_.empty()) {
    throw ValidationError("vocabulary is empty: no term occurs in at least " +
                          std::to_string(min_df) + " documents");
  }
  vocab.BuildIndex();
  return vocab;
}

void TfIdfVocabulary::BuildIndex() {
  index_.clear();
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index_.emplace(terms_[i].text, static_cast<std::uint32_t>(i));
  }
}

std::int64_t TfIdfVocabulary::IndexOf(std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

SparseVector TfIdfVocabulary::Vectorize(std::string_view text) const {
  std::map<std::uint32_t, std::size_t> counts;
  for (const std::string& token : Tokenize(text)) {
    auto it = index_.find(token);
    if (it != index_.end()) ++counts[it->second];
  }
  std::vector<SparseEntry> entries;
  entries.reserve(counts.size());
  double norm_sq = 0.0;
  for (const auto& [index, count] : counts) {
    const double w = static_cast<double>(count) * terms_[index].idf;
    entries.push_back({index, w});
    norm_sq += w * w;
  }
  if (norm_sq > 0.0) {
    const double norm = std::sqrt(norm_sq);
    for (SparseEntry& e : entries) e.weight /= norm;
  }
  return SparseVector(std::move(entries), terms_.size());
}

std::string TfIdfVocabulary::Serialize() const {
  std::string out = "n_documents\t" + std::to_string(n_documents_) +
                    "\tmin_df\t" + std::to_string(min_df_) + "\n";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out += terms_[i].text;
    out += '\t';
    out += std::to_string(i);
    out += '\t';
    out += std::to_string(terms_[i].document_frequency);
    out += '\t';
    out += FormatDouble(terms_[i].idf);
    out += '\n';
  }
  return out;
}

TfIdfVocabulary TfIdfVocabulary::Parse(std::string_view content,
                                       const std::string& source) {
  const auto lines = SplitLines(content);
  if (lines.empty()) throw ParseError(source, 0, "empty vocabulary file");
  const auto header = SplitFields(lines[0]);
  if (header.size() != 4 || header[0] != "n_documents" ||
      header[2] != "min_df") {
    throw ParseError(source, 1,
                     "expected header n_documents<TAB>N<TAB>min_df<TAB>M");
  }
  TfIdfVocabulary vocab;
  vocab.n_documents_ = ParseUnsigned(header[1], source, 1);
  vocab.min_df_ = ParseUnsigned(header[3], source, 1);

  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto fields = SplitFields(lines[n]);
    if (fields.size() != 4) {
      throw ParseError(source, n + 1, "expected term<TAB>index<TAB>df<TAB>idf");
    }
    if (ParseUnsigned(fields[1], source, n + 1) != vocab.terms_.size()) {
      throw ParseError(source, n + 1, "term indices must be 0, 1, 2, ...");
    }
    if (!vocab.terms_.empty() && !(vocab.terms_.back().text < fields[0])) {
      throw ParseError(source, n + 1, "terms must be in lexicographic order");
    }
    Term term{std::string(fields[0]), ParseUnsigned(fields[2], source, n + 1),
              ParseDouble(fields[3], source, n + 1)};
    if (term.document_frequency < vocab.min_df_ ||
        term.document_frequency > vocab.n_documents_) {
      throw ParseError(source, n + 1, "document frequency out of range");
    }
    if (!std::isfinite(term.idf) || term.idf <= 0.0) {
      throw ParseError(source, n + 1, "idf must be finite and positive");
    }
    vocab.terms_.push_back(std::move(term));
  }
  if (vocab.terms_.empty()) throw ParseError(source, 1, "vocabulary has no terms");
  vocab.BuildIndex();
  return vocab;
}

void TfIdfVocabulary::Save(const std::filesystem::path& path) const {
  WriteFile(path, Serialize());
}

TfIdfVocabulary TfIdfVocabulary::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

}  // namespace tweetinfo
