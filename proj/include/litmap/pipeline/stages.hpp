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

#include <string_view>

#include <nlohmann/json.hpp>

#include "litmap/pipeline/config.hpp"
#include "litmap/server/snapshot.hpp"

/// The pipeline stages. Each reads its predecessor's artifact from the work
/// directory, writes its own, and returns a report that is also saved as
/// <stage>_report.json. With dry_run nothing is written.
///
///   filter   dblp xml            -> records.jsonl, rejects.jsonl
///   scrape   records.jsonl       -> augmented.jsonl
///   clean    augmented.jsonl     -> cleaned.json
///   embed    cleaned.json        -> embeddings/<method>.lmemb
///   project  embeddings or file  -> projection.csv
///   export   all of the above    -> consolidated corpus json
namespace litmap::pipeline {

enum class Stage { filter, scrape, clean, embed, project, export_corpus, serve };

std::string_view stage_name(Stage stage) noexcept;

struct StageOptions {
    bool dry_run = false;
};

nlohmann::json run_filter(const PipelineConfig& config, const StageOptions& options);
nlohmann::json run_scrape(const PipelineConfig& config, const StageOptions& options);
nlohmann::json run_clean(const PipelineConfig& config, const StageOptions& options);
nlohmann::json run_embed(const PipelineConfig& config, const StageOptions& options);
nlohmann::json run_project(const PipelineConfig& config, const StageOptions& options);
nlohmann::json run_export(const PipelineConfig& config, const StageOptions& options);

/// Dispatches to the run_* function; `serve` is not a batch stage and
/// throws std::invalid_argument.
nlohmann::json run_stage(Stage stage, const PipelineConfig& config, const StageOptions& options);

/// What `serve` loads: the exported corpus, every configured embedding
/// file, the projection when present. Throws MissingInput.
server::SnapshotSources snapshot_sources(const PipelineConfig& config);

}  // namespace litmap::pipeline
