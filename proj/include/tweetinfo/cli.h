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

#ifndef TWEETINFO_CLI_H_
#define TWEETINFO_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace tweetinfo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs `tweetinfo <subcommand> ...`. `args[0]` is the program name.
// Subcommands: split, normalize, train, predict, fuse, eval.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tweetinfo::cli

#endif  // TWEETINFO_CLI_H_
