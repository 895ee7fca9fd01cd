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

// Tweet text normalization.
//
// A tweet goes through seven stages, always in this order:
//
//   1. emoji sequences -> text descriptions
//   2. ASCII lowercasing (optional, on by default)
//   3. contraction expansion          ("i'm" -> "i am")
//   4. slang replacement              ("2morrow" -> "tomorrow")
//   5. interjection replacement       ("oww" -> "pain")
//   6. repeated-letter collapsing     ("coooool" -> "cool")
//   7. noise stripping: non-ASCII bytes, punctuation and control characters
//      are deleted, whitespace runs become one space, ends are trimmed.
//
// Stages 6 and 7 can expose new dictionary keys ("owww" becomes "oww", "i.m"
// becomes "im"), so Normalizer::Normalize repeats the sequence until the text
// stops changing. Dictionary values are required to be fixed points of one
// pass, which bounds this at three passes and makes Normalize idempotent.

#ifndef TWEETINFO_NORMALIZE_H_
#define TWEETINFO_NORMALIZE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetinfo/dataset.h"

namespace tweetinfo {

using Dictionary = std::map<std::string, std::string, std::less<>>;

enum class DictionaryKind { kEmoji, kInterjections, kContractions, kSlang };

std::string_view DictionaryKindName(DictionaryKind kind);

struct ReplacementDictionaries {
  Dictionary emoji;
  Dictionary interjections;
  Dictionary contractions;
  Dictionary slang;

  Dictionary& of(DictionaryKind kind);
  const Dictionary& of(DictionaryKind kind) const;

  // The tables compiled into the library from data/dictionaries/*.tsv.
  static ReplacementDictionaries Bundled();
};

// Dictionary files hold `key<TAB>value` lines. Blank lines and lines
// starting with '#' are ignored. Throws ParseError on a malformed line or a
// repeated key.
Dictionary ParseDictionary(std::string_view content,
                           const std::string& source = "<memory>");
Dictionary LoadDictionary(const std::filesystem::path& path);

// The raw TSV text of a bundled table.
std::string_view BundledDictionaryText(DictionaryKind kind);

enum class MatchMode {
  // Keys match only as whole tokens: the characters on either side of the
  // match must not be word characters (ASCII alphanumerics, '\'', '_', or
  // any byte >= 0x80). Matching ignores ASCII case, and the replacement
  // takes the case of the matched text ("I'm" -> "I am", "LOL" ->
  // "LAUGHING OUT LOUD"), so keys are expected in lower case.
  kToken,
  // Keys match at any position. The value is inserted with a space on each
  // side so it never fuses with neighbouring text.
  kAnywhere,
};

// Single left-to-right replacement pass. At each position the longest
// matching key wins; replaced text is not scanned again.
class Replacer {
 public:
  Replacer() = default;
  Replacer(const Dictionary& dict, MatchMode mode);

  std::string Apply(std::string_view text) const;

 private:
  MatchMode mode_ = MatchMode::kToken;
  std::shared_ptr<const Dictionary> dict_;
  // Views into *dict_.
  std::unordered_map<std::string_view, std::string_view> table_;
  std::vector<std::size_t> lengths_;  // distinct key lengths, descending
};

std::string ApplyDictionary(std::string_view text, const Dictionary& dict,
                            MatchMode mode = MatchMode::kToken);

// Shortens every run of three or more identical ASCII letters to two.
std::string CollapseRepeats(std::string_view token);

std::string StripNoise(std::string_view text);

bool IsWordByte(unsigned char c);

struct NormalizationConfig {
  ReplacementDictionaries dictionaries = ReplacementDictionaries::Bundled();
  bool lowercase = true;
};

class Normalizer {
 public:
  // Validates the dictionaries and throws ValidationError naming the first
  // offending entry: empty key, key equal to its value, emoji key without a
  // non-ASCII byte, token key containing whitespace or upper-case letters,
  // or a value that one normalization pass would change.
  explicit Normalizer(NormalizationConfig config = {});

  std::string Normalize(std::string_view raw) const;

  // One pass of the seven stages.
  std::string NormalizeOnce(std::string_view raw) const;

  Corpus NormalizeCorpus(const Corpus& corpus) const;

  const NormalizationConfig& config() const { return config_; }

 private:
  NormalizationConfig config_;
  Replacer emoji_;
  Replacer contractions_;
  Replacer slang_;
  Replacer interjections_;
};

}  // namespace tweetinfo

#endif  // TWEETINFO_NORMALIZE_H_
