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

// File helpers shared by the subcommands.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace wgs::cli {

using Json = nlohmann::ordered_json;

/// Writes `text` to `path`, or to `console` when path is "-".
void write_text(const std::string& path, const std::string& text, std::ostream& console);
std::string read_text(const std::string& path);

std::string dump_json(const Json& j);

/// Full-precision decimal rendering used in CSV cells.
std::string fmt(double v);

/// Lowercase hex SHA-256 of a string.
std::string sha256_hex(const std::string& data);

struct Manifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  bool timestamp = true;
};

/// Serializes the manifest, hashing every listed output file.
std::string render_manifest(const Manifest& m);

}  // namespace wgs::cli
