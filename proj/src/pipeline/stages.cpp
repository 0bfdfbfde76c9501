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

#include "litmap/pipeline/stages.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "litmap/augment/augment.hpp"
#include "litmap/augment/transport.hpp"
#include "litmap/core/corpus_json.hpp"
#include "litmap/core/io.hpp"
#include "litmap/core/log.hpp"
#include "litmap/embed/remote.hpp"
#include "litmap/embed/text.hpp"
#include "litmap/ingest/bibliography.hpp"
#include "litmap/projection/projection.hpp"

namespace litmap::pipeline {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const fs::path& require_file(const fs::path& path, std::string_view stage) {
    if (!fs::is_regular_file(path)) {
        throw MissingInput(std::string(stage), path.string());
    }
    return path;
}

template <typename T>
const T& require_set(const std::optional<T>& value, std::string_view stage, const char* key) {
    if (!value) {
        throw MissingInput(std::string(stage), key);
    }
    return *value;
}

void save(const fs::path& path, std::string_view bytes) {
    fs::create_directories(path.parent_path());
    write_file_atomic(path, bytes);
}

void save_report(const PipelineConfig& config, std::string_view stage, const json& report,
                 const StageOptions& options) {
    if (!options.dry_run) {
        save(config.report_path(stage), report.dump(2) + "\n");
    }
}

std::vector<PaperRecord> read_cleaned(const PipelineConfig& config, std::string_view stage) {
    return read_corpus(require_file(config.cleaned_path(), stage));
}

std::vector<embed::TokenList> corpus_tokens(std::span<const PaperRecord> records) {
    std::vector<embed::TokenList> docs;
    docs.reserve(records.size());
    for (const auto& r : records) {
        docs.push_back(embed::document_tokens(r.title, r.abstract));
    }
    return docs;
}

json embed_text_method(embed::Method method, const PipelineConfig& config, std::span<const PaperRecord> records,
                       embed::EmbeddingSet& out) {
    const fs::path& vectors = require_file(require_set(config.word_vectors, "embed", "embed.word_vectors"), "embed");
    const auto table = server::load_corpus_word_vectors(vectors, records);
    const auto docs = corpus_tokens(records);
    out.dims = table->dims();
    std::vector<embed::Embedded> embedded;
    if (method == embed::Method::tfidf) {
        const auto model = embed::TfidfModel::fit(docs);
        embedded.reserve(docs.size());
        for (const auto& doc : docs) {
            embedded.push_back(embed::embed_tfidf(doc, model.weights(doc), *table));
        }
    } else {
        embedded = embed::embed_corpus_sif(docs, *table, config.embed);
    }
    json flagged = json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
        out.add(records[i].id, std::span<const double>(embedded[i].vector));
        if (embedded[i].flagged) {
            flagged.push_back(to_int(records[i].id));
        }
    }
    return {{"count", out.size()}, {"dims", out.dims}, {"vocabulary", table->size()}, {"flagged", flagged}};
}

json embed_remote(const PipelineConfig& config, std::span<const PaperRecord> records, embed::EmbeddingSet& out) {
    const auto& source = require_set(config.remote, "embed", "embed.remote");
    if (source.fixture_dir) {
        require_file(*source.fixture_dir / "vectors.json", "embed");
    }
    auto backend = server::make_backend(source);
    embed::RemoteEmbedder embedder(*backend, source.config);
    std::vector<embed::RemoteRequest> requests;
    requests.reserve(records.size());
    for (const auto& r : records) {
        requests.push_back({r.id, r.title, r.abstract});
    }
    const auto outcomes = embedder.embed_all(requests);
    json failures = json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (const auto* v = std::get_if<std::vector<double>>(&outcomes[i])) {
            if (out.dims == 0) {
                out.dims = v->size();
            }
            out.add(records[i].id, std::span<const double>(*v));
        } else {
            failures.push_back({{"id", to_int(records[i].id)}, {"reason", std::get<std::string>(outcomes[i])}});
        }
    }
    return {{"count", out.size()}, {"dims", out.dims}, {"failures", failures}};
}

}  // namespace

std::string_view stage_name(Stage stage) noexcept {
    switch (stage) {
        case Stage::filter:
            return "filter";
        case Stage::scrape:
            return "scrape";
        case Stage::clean:
            return "clean";
        case Stage::embed:
            return "embed";
        case Stage::project:
            return "project";
        case Stage::export_corpus:
            return "export";
        case Stage::serve:
            return "serve";
    }
    return "unknown";
}

json run_filter(const PipelineConfig& config, const StageOptions& options) {
    const fs::path& xml = require_file(require_set(config.dblp_xml, "filter", "filter.dblp_xml"), "filter");
    const auto entities = ingest::load_entity_table(require_file(config.entity_table, "filter"));
    const ingest::VenueFilter venues(config.venues, config.venue_match);

    ingest::IdAssigner ids;
    std::string records;
    std::string rejects;
    std::size_t kept = 0;
    std::size_t out_of_venue = 0;
    std::map<std::string, std::size_t> reasons;
    const auto stats = ingest::parse_bibliography(
        ingest::open_byte_source(xml), entities,
        [&](ingest::RawPublicationRecord&& record) {
            if (!venues.matches(record.source)) {
                ++out_of_venue;
                return;
            }
            records += ingest::to_json(ids.assign(std::move(record))).dump();
            records += '\n';
            ++kept;
        },
        [&](ingest::Reject&& reject) {
            ++reasons[reject.reason];
            rejects += ingest::to_json(reject).dump();
            rejects += '\n';
        });

    json report = {{"parsed", stats.records},
                   {"rejected", stats.rejects},
                   {"reject_reasons", reasons},
                   {"out_of_venue", out_of_venue},
                   {"kept", kept}};
    if (!options.dry_run) {
        save(config.records_path(), records);
        save(config.rejects_path(), rejects);
    }
    save_report(config, "filter", report, options);
    return report;
}

json run_scrape(const PipelineConfig& config, const StageOptions& options) {
    std::vector<ingest::IdentifiedRecord> records;
    for_each_json_line(require_file(config.records_path(), "scrape"),
                       [&](const json& line) { records.push_back(ingest::identified_from_json(line)); });
    if (!fs::is_directory(config.profiles_dir)) {
        throw MissingInput("scrape", config.profiles_dir.string());
    }
    const auto profiles = augment::ProfileSet::load_directory(config.profiles_dir);

    std::unique_ptr<augment::Transport> transport;
    augment::FetchPolicy policy = config.fetch;
    if (config.fetch_mode == FetchMode::offline) {
        const fs::path& dir = require_set(config.fixture_dir, "scrape", "scrape.fixture_dir");
        require_file(dir / "index.json", "scrape");
        transport = std::make_unique<augment::FixtureTransport>(augment::FixtureStore(dir));
        policy.min_interval_ms = 0;
    } else {
        transport = std::make_unique<augment::HttpTransport>();
    }
    if (options.dry_run) {
        json report = {{"records", records.size()},
                       {"mode", config.fetch_mode == FetchMode::offline ? "offline" : "live"},
                       {"profiles", profiles.size()}};
        return report;
    }

    augment::Fetcher fetcher(policy, *transport);
    augment::AugmentReport outcome;
    const auto augmented = augment::augment_corpus(records, fetcher, profiles, outcome, config.scrape_workers);

    std::string lines;
    for (const auto& r : augmented) {
        lines += augment::to_json(r).dump();
        lines += '\n';
    }
    json failures = json::array();
    for (const auto& f : outcome.failures) {
        failures.push_back({{"id", to_int(f.id)}, {"url", f.url}, {"reason", f.reason}});
    }
    json report = {{"processed", outcome.processed},
                   {"augmented", outcome.processed - outcome.failures.size()},
                   {"failures", failures}};
    save(config.augmented_path(), lines);
    save_report(config, "scrape", report, options);
    return report;
}

json run_clean(const PipelineConfig& config, const StageOptions& options) {
    std::vector<augment::AugmentedRecord> records;
    for_each_json_line(require_file(config.augmented_path(), "clean"),
                       [&](const json& line) { records.push_back(augment::augmented_from_json(line)); });
    auto synonyms = clean::SynonymMap::load(require_file(config.synonyms, "clean"));
    const auto cleaning = clean::cleaning_config_from_json(config.cleaning, std::move(synonyms));
    const auto result = clean::clean_corpus(std::span<const augment::AugmentedRecord>(records), cleaning);
    const json report = clean::to_json(result.report);
    if (!options.dry_run) {
        save(config.cleaned_path(), dump_corpus(result.records));
    }
    save_report(config, "clean", report, options);
    return report;
}

json run_embed(const PipelineConfig& config, const StageOptions& options) {
    const auto records = read_cleaned(config, "embed");
    if (config.methods.empty()) {
        throw ConfigError("embed.methods is empty");
    }
    json report = json::object();
    for (embed::Method method : config.methods) {
        const std::string name(embed::method_name(method));
        embed::EmbeddingSet set;
        set.method = method;
        report[name] = method == embed::Method::remote ? embed_remote(config, records, set)
                                                       : embed_text_method(method, config, records, set);
        log::info("embed: " + name + " " + std::to_string(set.size()) + " vectors");
        if (!options.dry_run) {
            save(config.embedding_path(method), embed::serialize_embeddings(set));
        }
    }
    save_report(config, "embed", report, options);
    return report;
}

json run_project(const PipelineConfig& config, const StageOptions& options) {
    projection::PlanarCoordinates coords;
    json report;
    if (config.projection_source == ProjectionSource::file) {
        const auto records = read_cleaned(config, "project");
        std::vector<PaperId> ids;
        for (const auto& r : records) {
            ids.push_back(r.id);
        }
        coords = projection::load_projection(require_file(*config.projection_file, "project"), ids);
        report = {{"source", "file"}, {"count", coords.size()}, {"extra_ids", coords.extra_ids}};
    } else {
        const embed::Method method = config.pca_method();
        const auto set = embed::load_embeddings(require_file(config.embedding_path(method), "project"));
        coords = projection::pca_project_2d(set);
        if (coords.degenerate) {
            log::warn("project: embeddings have rank < 2, projection is degenerate");
        }
        report = {{"source", "pca"},
                  {"method", embed::method_name(method)},
                  {"count", coords.size()},
                  {"degenerate", coords.degenerate}};
    }
    if (!options.dry_run) {
        save(config.projection_path(), projection::format_projection_csv(coords));
    }
    save_report(config, "project", report, options);
    return report;
}

json run_export(const PipelineConfig& config, const StageOptions& options) {
    const auto records = read_cleaned(config, "export");
    std::set<PaperId> keep;
    for (const auto& r : records) {
        keep.insert(r.id);
    }
    auto narrow = [&keep](const std::vector<PaperId>& present) {
        const std::unordered_set<PaperId> have(present.begin(), present.end());
        std::erase_if(keep, [&](PaperId id) { return !have.contains(id); });
    };
    for (embed::Method method : config.methods) {
        narrow(embed::load_embeddings(require_file(config.embedding_path(method), "export")).ids);
    }
    if (fs::is_regular_file(config.projection_path())) {
        const std::string text = read_file(config.projection_path());
        std::vector<PaperId> candidates(keep.begin(), keep.end());
        try {
            projection::parse_projection(text, candidates);
        } catch (const projection::MissingIds& e) {
            const std::unordered_set<PaperId> missing(e.ids().begin(), e.ids().end());
            std::erase_if(keep, [&](PaperId id) { return missing.contains(id); });
        }
    }

    std::vector<PaperRecord> out;
    json dropped = json::array();
    for (const auto& r : records) {
        if (keep.contains(r.id)) {
            out.push_back(r);
        } else {
            dropped.push_back(to_int(r.id));
        }
    }
    json report = {{"records", out.size()}, {"dropped", dropped}};
    if (!options.dry_run) {
        save(config.corpus_json, dump_corpus(out));
    }
    save_report(config, "export", report, options);
    return report;
}

json run_stage(Stage stage, const PipelineConfig& config, const StageOptions& options) {
    switch (stage) {
        case Stage::filter:
            return run_filter(config, options);
        case Stage::scrape:
            return run_scrape(config, options);
        case Stage::clean:
            return run_clean(config, options);
        case Stage::embed:
            return run_embed(config, options);
        case Stage::project:
            return run_project(config, options);
        case Stage::export_corpus:
            return run_export(config, options);
        case Stage::serve:
            break;
    }
    throw std::invalid_argument("serve is not a batch stage");
}

server::SnapshotSources snapshot_sources(const PipelineConfig& config) {
    server::SnapshotSources sources;
    sources.corpus = require_file(config.corpus_json, "serve");
    for (embed::Method method : config.methods) {
        sources.embeddings.emplace(method, require_file(config.embedding_path(method), "serve"));
    }
    if (fs::is_regular_file(config.projection_path())) {
        sources.projection = config.projection_path();
    } else {
        log::warn("serve: no projection at " + config.projection_path().string());
    }
    if (config.word_vectors) {
        sources.word_vectors = require_file(*config.word_vectors, "serve");
    }
    sources.embed = config.embed;
    sources.remote = config.remote;
    return sources;
}

}  // namespace litmap::pipeline
