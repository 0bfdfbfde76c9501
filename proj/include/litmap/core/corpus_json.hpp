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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/core/types.hpp"

/// The consolidated corpus JSON: an array of objects with the keys
/// ID, Title, Authors, Source, Year, URL, Abstract, Keywords, CitationCounts.
namespace litmap {

class CorpusFormatError : public Error {
   public:
    using Error::Error;
};

nlohmann::json to_corpus_json(const PaperRecord& record);
PaperRecord from_corpus_json(const nlohmann::json& object);

std::vector<PaperRecord> read_corpus(const std::filesystem::path& path);
std::vector<PaperRecord> parse_corpus(std::istream& in);

/// Writes a pretty-printed array with one trailing newline. Output bytes are
/// a pure function of the records.
void write_corpus(const std::filesystem::path& path, std::span<const PaperRecord> records);
std::string dump_corpus(std::span<const PaperRecord> records);

}  // namespace litmap
