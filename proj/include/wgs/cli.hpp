// Copyright 2026 The wgstate Authors
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

#pragma once

// Command-line front end.  `run` is the whole program minus process exit, so
// tests can drive it in-process.
//
// Exit codes: 0 success, 2 usage or malformed input, 3 degenerate data,
// 4 numerical failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace wgs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitNumerical = 4;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses an angle given in degrees, or in radians with an "rad" suffix.
double parse_angle(const std::string& text);

}  // namespace wgs::cli
