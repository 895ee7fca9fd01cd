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

// Unigram TF-IDF features.
//
//   idf(t)    = ln((1 + N) / (1 + df(t))) + 1
//   weight(t) = count(t, doc) * idf(t), then L2-normalized per document.

#ifndef TWEETINFO_FEATURES_H_
#define TWEETINFO_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tweetinfo {

struct SparseEntry {
  std::uint32_t index;
  double weight;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Indices strictly increasing and below dimension.
class SparseVector {
 public:
  SparseVector() = default;
  // Throws InvalidArgument if the entries are unsorted, repeated, out of
  // range or non-finite.
  SparseVector(std::vector<SparseEntry> entries, std::size_t dimension);

  const std::vector<SparseEntry>& entries() const { return entries_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double Norm() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<SparseEntry> entries_;
  std::size_t dimension_ = 0;
};

// Merge-based inner product. Dimensions must agree (InvalidArgument).
double Dot(const SparseVector& a, const SparseVector& b);

// Splits on ASCII whitespace and drops empty tokens.
std::vector<std::string> Tokenize(std::string_view text);

class TfIdfVocabulary {
 public:
  struct Term {
    std::string text;
    std::size_t document_frequency;
    double idf;
  };

  TfIdfVocabulary() = default;

  // Terms with df >= min_df, indexed in lexicographic (byte) order.
  // Throws InvalidArgument for an empty corpus or min_df < 1, and
  // ValidationError when no term survives the filter.
  static TfIdfVocabulary Fit(std::span<const std::string> documents,
                             std::size_t min_df);

  std::size_t size() const { return terms_.size(); }
  std::size_t n_documents() const { return n_documents_; }
  std::size_t min_df() const { return min_df_; }
  const std::vector<Term>& terms() const { return terms_; }

  // -1 when the term is not in the vocabulary.
  std::int64_t IndexOf(std::string_view term) const;

  // Raw counts times idf, L2-normalized. Out-of-vocabulary tokens are
  // ignored; a text without known tokens yields the zero vector.
  SparseVector Vectorize(std::string_view text) const;

  // Header `n_documents<TAB>N<TAB>min_df<TAB>M`, then one
  // `term<TAB>index<TAB>df<TAB>idf` line per term.
  std::string Serialize() const;
  static TfIdfVocabulary Parse(std::string_view content,
                               const std::string& source = "<memory>");
  void Save(const std::filesystem::path& path) const;
  static TfIdfVocabulary Load(const std::filesystem::path& path);

 private:
  void BuildIndex();

  std::vector<Term> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t n_documents_ = 0;
  std::size_t min_df_ = 1;
};

double SmoothedIdf(std::size_t n_documents, std::size_t document_frequency);

}  // namespace tweetinfo

#endif  // TWEETINFO_FEATURES_H_
