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

#include "tweetinfo/normalize.h"

#include <algorithm>
#include <array>
#include <set>

#include "tweetinfo/error.h"

namespace tweetinfo {

namespace {

constexpr std::array<DictionaryKind, 4> kAllKinds = {
    DictionaryKind::kEmoji, DictionaryKind::kInterjections,
    DictionaryKind::kContractions, DictionaryKind::kSlang};

bool IsAsciiLetter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsAsciiUpper(unsigned char c) { return c >= 'A' && c <= 'Z'; }

char ToLowerAscii(char c) {
  return IsAsciiUpper(static_cast<unsigned char>(c))
             ? static_cast<char>(c - 'A' + 'a')
             : c;
}

char ToUpperAscii(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

// Carries the capitalization of a matched token over to its replacement:
// "LOL" -> "LAUGHING OUT LOUD", "I'm" -> "I am", "lol" unchanged.
void AppendWithCase(std::string_view matched, std::string_view value,
                    std::string& out) {
  std::size_t letters = 0, upper = 0;
  for (char c : matched) {
    const auto u = static_cast<unsigned char>(c);
    letters += IsAsciiLetter(u);
    upper += IsAsciiUpper(u);
  }
  const std::size_t start = out.size();
  out += value;
  if (letters >= 2 && upper == letters) {
    for (std::size_t k = start; k < out.size(); ++k) {
      out[k] = ToUpperAscii(out[k]);
    }
  } else if (IsAsciiUpper(static_cast<unsigned char>(matched.front())) &&
             start < out.size()) {
    out[start] = ToUpperAscii(out[start]);
  }
}

bool IsAsciiSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Keeps the normalization pass count finite even if the dictionary
// validation guarantee is somehow bypassed.
constexpr int kMaxPasses = 4;

}  // namespace

std::string_view DictionaryKindName(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::kEmoji:
      return "emoji";
    case DictionaryKind::kInterjections:
      return "interjections";
    case DictionaryKind::kContractions:
      return "contractions";
    case DictionaryKind::kSlang:
      return "slang";
  }
  return "unknown";
}

Dictionary& ReplacementDictionaries::of(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::kEmoji:
      return emoji;
    case DictionaryKind::kInterjections:
      return interjections;
    case DictionaryKind::kContractions:
      return contractions;
    case DictionaryKind::kSlang:
      break;
  }
  return slang;
}

const Dictionary& ReplacementDictionaries::of(DictionaryKind kind) const {
  return const_cast<ReplacementDictionaries*>(this)->of(kind);
}

ReplacementDictionaries ReplacementDictionaries::Bundled() {
  ReplacementDictionaries dicts;
  for (DictionaryKind kind : kAllKinds) {
    dicts.of(kind) =
        ParseDictionary(BundledDictionaryText(kind),
                        "bundled:" + std::string(DictionaryKindName(kind)));
  }
  return dicts;
}

Dictionary ParseDictionary(std::string_view content,
                           const std::string& source) {
  Dictionary dict;
  const auto lines = SplitLines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitFields(line);
    if (fields.size() != 2) {
      throw ParseError(source, n + 1, "expected key<TAB>value");
    }
    if (!dict.emplace(std::string(fields[0]), std::string(fields[1])).second) {
      throw ParseError(source, n + 1,
                       "repeated key '" + std::string(fields[0]) + "'");
    }
  }
  return dict;
}

Dictionary LoadDictionary(const std::filesystem::path& path) {
  return ParseDictionary(ReadFile(path), path.string());
}

bool IsWordByte(unsigned char c) {
  return (c >= '0' && c <= '9') || IsAsciiLetter(c) || c == '\'' ||
         c == '_' || c >= 0x80;
}

Replacer::Replacer(const Dictionary& dict, MatchMode mode)
    : mode_(mode), dict_(std::make_shared<const Dictionary>(dict)) {
  std::set<std::size_t, std::greater<>> lengths;
  for (const auto& [key, value] : *dict_) {
    if (key.empty()) continue;
    table_.emplace(key, value);
    lengths.insert(key.size());
  }
  lengths_.assign(lengths.begin(), lengths.end());
}

std::string Replacer::Apply(std::string_view text) const {
  if (table_.empty()) return std::string(text);
  std::string out;
  out.reserve(text.size());
  const auto word_at = [&](std::size_t i) {
    return IsWordByte(static_cast<unsigned char>(text[i]));
  };
  // Token keys are looked up ASCII-case-insensitively.
  std::string folded;
  if (mode_ == MatchMode::kToken) {
    folded.resize(text.size());
    std::transform(text.begin(), text.end(), folded.begin(), ToLowerAscii);
  }
  const std::string_view haystack =
      mode_ == MatchMode::kToken ? std::string_view(folded) : text;

  std::size_t i = 0;
  while (i < text.size()) {
    const bool can_start =
        mode_ == MatchMode::kAnywhere || i == 0 || !word_at(i - 1);
    bool matched = false;
    if (can_start) {
      for (std::size_t len : lengths_) {
        if (i + len > text.size()) continue;
        const std::size_t end = i + len;
        if (mode_ == MatchMode::kToken && end < text.size() && word_at(end)) {
          continue;
        }
        auto it = table_.find(haystack.substr(i, len));
        if (it == table_.end()) continue;
        if (mode_ == MatchMode::kAnywhere) {
          out += ' ';
          out += it->second;
          out += ' ';
        } else {
          AppendWithCase(text.substr(i, len), it->second, out);
        }
        i = end;
        matched = true;
        break;
      }
    }
    if (!matched) out += text[i++];
  }
  return out;
}

std::string ApplyDictionary(std::string_view text, const Dictionary& dict,
                            MatchMode mode) {
  return Replacer(dict, mode).Apply(text);
}

std::string CollapseRepeats(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  std::size_t run = 0;
  for (std::size_t i = 0; i < token.size(); ++i) {
    const auto c = static_cast<unsigned char>(token[i]);
    run = (i > 0 && token[i] == token[i - 1]) ? run + 1 : 1;
    if (run > 2 && IsAsciiLetter(c)) continue;
    out += token[i];
  }
  return out;
}

std::string StripNoise(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsAsciiSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    // Keep only ASCII letters and digits; everything else is noise.
    if (c >= 0x80 || !((c >= '0' && c <= '9') || IsAsciiLetter(c))) continue;
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += ch;
  }
  return out;
}

Normalizer::Normalizer(NormalizationConfig config)
    : config_(std::move(config)),
      emoji_(config_.dictionaries.emoji, MatchMode::kAnywhere),
      contractions_(config_.dictionaries.contractions, MatchMode::kToken),
      slang_(config_.dictionaries.slang, MatchMode::kToken),
      interjections_(config_.dictionaries.interjections, MatchMode::kToken) {
  for (DictionaryKind kind : kAllKinds) {
    const std::string table(DictionaryKindName(kind));
    for (const auto& [key, value] : config_.dictionaries.of(kind)) {
      const std::string where = table + " entry '" + key + "'";
      if (key.empty()) throw ValidationError(table + ": empty key");
      if (key == value) throw ValidationError(where + " maps to itself");
      if (kind == DictionaryKind::kEmoji) {
        const bool has_non_ascii = std::any_of(key.begin(), key.end(), [](char c) {
          return static_cast<unsigned char>(c) >= 0x80;
        });
        if (!has_non_ascii) {
          throw ValidationError(where + " has no non-ASCII codepoint");
        }
      } else if (std::any_of(key.begin(), key.end(), [](char c) {
                   return IsAsciiSpace(static_cast<unsigned char>(c));
                 })) {
        throw ValidationError(where + " contains whitespace");
      } else if (std::any_of(key.begin(), key.end(), [](char c) {
                   return IsAsciiUpper(static_cast<unsigned char>(c));
                 })) {
        throw ValidationError(where + " has upper-case letters");
      }
      if (NormalizeOnce(value) != value) {
        throw ValidationError(where + ": value '" + value +
                              "' is not in normal form (normalizes to '" +
                              NormalizeOnce(value) + "')");
      }
    }
  }
}

std::string Normalizer::NormalizeOnce(std::string_view raw) const {
  std::string text = emoji_.Apply(raw);
  if (config_.lowercase) {
    for (char& c : text) {
      c = ToLowerAscii(c);
    }
  }
  text = contractions_.Apply(text);
  text = slang_.Apply(text);
  text = interjections_.Apply(text);
  text = CollapseRepeats(text);
  return StripNoise(text);
}

std::string Normalizer::Normalize(std::string_view raw) const {
  std::string text = NormalizeOnce(raw);
  for (int pass = 1; pass < kMaxPasses; ++pass) {
    std::string next = NormalizeOnce(text);
    if (next == text) break;
    text = std::move(next);
  }
  return text;
}

Corpus Normalizer::NormalizeCorpus(const Corpus& corpus) const {
  std::vector<CorpusEntry> entries = corpus.entries();
  for (CorpusEntry& e : entries) e.tweet.text = Normalize(e.tweet.text);
  return Corpus(std::move(entries));
}

}  // namespace tweetinfo
