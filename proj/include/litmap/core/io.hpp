// Copyright 2026 The litmap Authors
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

#include <filesystem>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "litmap/core/types.hpp"

namespace litmap {

class IoError : public Error {
   public:
    using Error::Error;
};

/// Reads a file into memory; throws IoError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so readers never see a
/// half-written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Calls `fn` once per non-blank line of a JSON-lines file.
/// Throws IoError naming the line on a parse failure.
void for_each_json_line(const std::filesystem::path& path,
                        const std::function<void(const nlohmann::json&)>& fn);

}  // namespace litmap
