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

// Locale-independent number formatting and parsing for the text file formats.

#ifndef TWEETINFO_TEXT_FORMAT_H_
#define TWEETINFO_TEXT_FORMAT_H_

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "tweetinfo/error.h"

namespace tweetinfo {

// Shortest decimal text that parses back to exactly `value`.
inline std::string FormatDouble(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double ParseDouble(std::string_view text, const std::string& source,
                          std::size_t line) {
  double value = 0.0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(source, line, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline std::uint64_t ParseUnsigned(std::string_view text,
                                   const std::string& source,
                                   std::size_t line) {
  std::uint64_t value = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(source, line,
                     "not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace tweetinfo

#endif  // TWEETINFO_TEXT_FORMAT_H_
