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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/augment/fetch.hpp"
#include "litmap/clean/clean.hpp"
#include "litmap/embed/aggregate.hpp"
#include "litmap/embed/store.hpp"
#include "litmap/ingest/records.hpp"
#include "litmap/server/http_server.hpp"
#include "litmap/server/snapshot.hpp"

namespace litmap::pipeline {

class ConfigError : public Error {
   public:
    using Error::Error;
};

class MissingInput : public Error {
   public:
    MissingInput(std::string stage, std::string path)
        : Error("[" + stage + "] missing input: " + path), stage_(std::move(stage)), path_(std::move(path)) {}
    const std::string& stage() const noexcept { return stage_; }
    const std::string& path() const noexcept { return path_; }

   private:
    std::string stage_;
    std::string path_;
};

enum class FetchMode { offline, live };
enum class ProjectionSource { pca, file };

/// Everything the stages need. Relative paths in the file resolve against
/// the directory holding it; data files default to the installed data
/// directory.
///
///   {
///     "work_dir": "work",
///     "filter":  {"dblp_xml", "entity_table", "venues": [..] | "venues_file", "match": "prefix"},
///     "scrape":  {"mode": "offline" | "live", "fixture_dir", "profiles_dir", "workers", "fetch": {..}},
///     "clean":   {"synonyms", "title_len_min", ...},
///     "embed":   {"methods": [..], "word_vectors", "sif_a",
///                 "remote": {"endpoint" | "fixture_dir", "batch_size", "dims", "timeout_ms"}},
///     "project": {"source": "pca" | "file", "method", "file"},
///     "export":  {"corpus_json"},
///     "server":  {"host", "port", "threads", "cors_origin"}
///   }
struct PipelineConfig {
    std::filesystem::path base_dir;
    std::filesystem::path work_dir;

    std::optional<std::filesystem::path> dblp_xml;
    std::filesystem::path entity_table;
    std::vector<std::string> venues;
    ingest::MatchMode venue_match = ingest::MatchMode::prefix;

    FetchMode fetch_mode = FetchMode::offline;
    std::optional<std::filesystem::path> fixture_dir;
    std::filesystem::path profiles_dir;
    std::size_t scrape_workers = 1;
    augment::FetchPolicy fetch;

    std::filesystem::path synonyms;
    nlohmann::json cleaning = nlohmann::json::object();

    std::vector<embed::Method> methods;
    std::optional<std::filesystem::path> word_vectors;
    embed::EmbedConfig embed;
    std::optional<server::RemoteSource> remote;

    ProjectionSource projection_source = ProjectionSource::pca;
    std::optional<embed::Method> projection_method;
    std::optional<std::filesystem::path> projection_file;

    std::filesystem::path corpus_json;
    server::ServerOptions server;

    std::filesystem::path records_path() const { return work_dir / "records.jsonl"; }
    std::filesystem::path rejects_path() const { return work_dir / "rejects.jsonl"; }
    std::filesystem::path augmented_path() const { return work_dir / "augmented.jsonl"; }
    std::filesystem::path cleaned_path() const { return work_dir / "cleaned.json"; }
    std::filesystem::path embedding_path(embed::Method method) const;
    std::filesystem::path projection_path() const { return work_dir / "projection.csv"; }
    std::filesystem::path report_path(std::string_view stage) const;

    /// The method whose vectors feed the PCA projection.
    embed::Method pca_method() const;
};

/// Throws ConfigError.
PipelineConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

/// Where the bundled entity table, venue list, synonyms and publisher
/// profiles live. LITMAP_DATA_DIR overrides the build-time default.
std::filesystem::path data_dir();

}  // namespace litmap::pipeline
