// Copyright 2026 The cxi-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace cxi::cli {

// Exit codes, one per failure class so CI can tell them apart.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInvariant = 4;

/// Entry point behind main(); parses argv, runs the subcommand, maps
/// exceptions to exit codes.
int run(int argc, const char* const* argv);

}  // namespace cxi::cli
