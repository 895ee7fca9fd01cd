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

#ifndef TWEETINFO_ERROR_H_
#define TWEETINFO_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tweetinfo {

// Base class of every error raised by the library. The command-line front
// end maps these to exit status 1, except InvalidArgument (status 2).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file did not follow its declared format. `line()` is 1-based; 0 means
// the error is not tied to a particular line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data invariant (duplicate ids, unknown
// labels, a corpus with one class, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied parameter is outside its documented range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace tweetinfo

#endif  // TWEETINFO_ERROR_H_
