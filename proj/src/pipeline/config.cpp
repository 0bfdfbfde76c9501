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

#include "litmap/pipeline/config.hpp"

#include <cstdlib>
#include <set>

#include "litmap/core/io.hpp"

#ifndef LITMAP_DEFAULT_DATA_DIR
#define LITMAP_DEFAULT_DATA_DIR "data"
#endif

namespace litmap::pipeline {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& node, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!node.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& [key, value] : node.items()) {
        bool known = false;
        for (auto a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError("unknown key " + where + "." + key);
        }
    }
}

const json& section(const json& doc, const char* name) {
    static const json kEmpty = json::object();
    return doc.contains(name) ? doc[name] : kEmpty;
}

template <typename T>
T get(const json& node, const char* key, const std::string& where, T fallback) {
    if (!node.contains(key)) {
        return fallback;
    }
    try {
        return node[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + " has the wrong type");
    }
}

std::optional<fs::path> path_of(const json& node, const char* key, const std::string& where, const fs::path& base) {
    if (!node.contains(key)) {
        return std::nullopt;
    }
    const auto text = get<std::string>(node, key, where, "");
    if (text.empty()) {
        throw ConfigError(where + "." + key + " is empty");
    }
    return (base / text).lexically_normal();
}

embed::Method method_of(const std::string& name, const std::string& where) {
    try {
        return embed::parse_method(name);
    } catch (const std::invalid_argument&) {
        throw ConfigError(where + ": unknown embedding method '" + name + "'");
    }
}

}  // namespace

fs::path data_dir() {
    if (const char* env = std::getenv("LITMAP_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return LITMAP_DEFAULT_DATA_DIR;
}

fs::path PipelineConfig::embedding_path(embed::Method method) const {
    return work_dir / "embeddings" / (std::string(embed::method_name(method)) + ".lmemb");
}

fs::path PipelineConfig::report_path(std::string_view stage) const {
    return work_dir / (std::string(stage) + "_report.json");
}

embed::Method PipelineConfig::pca_method() const {
    if (projection_method) {
        return *projection_method;
    }
    if (methods.empty()) {
        throw ConfigError("project: no embedding method configured");
    }
    return methods.front();
}

PipelineConfig parse_config(const json& doc, const fs::path& base_dir) {
    check_keys(doc, "config", {"work_dir", "filter", "scrape", "clean", "embed", "project", "export", "server"});
    PipelineConfig config;
    config.base_dir = base_dir;
    const fs::path data = data_dir();
    config.work_dir = path_of(doc, "work_dir", "config", base_dir).value_or(base_dir / "work");

    const json& filter = section(doc, "filter");
    check_keys(filter, "filter", {"dblp_xml", "entity_table", "venues", "venues_file", "match"});
    config.dblp_xml = path_of(filter, "dblp_xml", "filter", base_dir);
    config.entity_table = path_of(filter, "entity_table", "filter", base_dir).value_or(data / "dblp_entities.json");
    try {
        config.venue_match = ingest::parse_match_mode(get<std::string>(filter, "match", "filter", "prefix"));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("filter.match: ") + e.what());
    }
    if (filter.contains("venues") && filter.contains("venues_file")) {
        throw ConfigError("filter: give venues or venues_file, not both");
    }
    if (filter.contains("venues")) {
        config.venues = get<std::vector<std::string>>(filter, "venues", "filter", {});
        if (config.venues.empty()) {
            throw ConfigError("filter.venues is empty");
        }
    } else {
        const auto file = path_of(filter, "venues_file", "filter", base_dir).value_or(data / "venues_default.json");
        try {
            json list = json::parse(read_file(file));
            config.venues = list.get<std::vector<std::string>>();
        } catch (const IoError& e) {
            throw ConfigError(e.what());
        } catch (const json::exception& e) {
            throw ConfigError("venue list " + file.string() + ": " + e.what());
        }
    }

    const json& scrape = section(doc, "scrape");
    check_keys(scrape, "scrape", {"mode", "fixture_dir", "profiles_dir", "workers", "fetch"});
    const auto mode = get<std::string>(scrape, "mode", "scrape", "offline");
    if (mode == "offline") {
        config.fetch_mode = FetchMode::offline;
    } else if (mode == "live") {
        config.fetch_mode = FetchMode::live;
    } else {
        throw ConfigError("scrape.mode must be offline or live");
    }
    config.fixture_dir = path_of(scrape, "fixture_dir", "scrape", base_dir);
    config.profiles_dir = path_of(scrape, "profiles_dir", "scrape", base_dir).value_or(data / "publishers");
    config.scrape_workers = get<std::size_t>(scrape, "workers", "scrape", 1);
    if (config.scrape_workers == 0) {
        throw ConfigError("scrape.workers must be at least 1");
    }
    try {
        config.fetch = augment::fetch_policy_from_json(section(scrape, "fetch"));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scrape.fetch: ") + e.what());
    }

    const json& clean = section(doc, "clean");
    check_keys(clean, "clean", {"synonyms", "title_len_min", "title_len_max", "abstract_len_min", "abstract_len_max"});
    config.synonyms = path_of(clean, "synonyms", "clean", base_dir).value_or(data / "synonyms.json");
    config.cleaning = clean;
    config.cleaning.erase("synonyms");
    try {
        clean::cleaning_config_from_json(config.cleaning, clean::SynonymMap{});
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    const json& emb = section(doc, "embed");
    check_keys(emb, "embed", {"methods", "word_vectors", "sif_a", "remote"});
    for (const auto& name : get<std::vector<std::string>>(emb, "methods", "embed", {"tfidf", "sif"})) {
        const auto m = method_of(name, "embed.methods");
        if (std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end()) {
            throw ConfigError("embed.methods lists " + name + " twice");
        }
        config.methods.push_back(m);
    }
    std::sort(config.methods.begin(), config.methods.end());
    config.word_vectors = path_of(emb, "word_vectors", "embed", base_dir);
    try {
        config.embed = embed::embed_config_from_json(emb);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (emb.contains("remote")) {
        const json& remote = emb["remote"];
        check_keys(remote, "embed.remote", {"endpoint", "fixture_dir", "batch_size", "dims", "timeout_ms"});
        server::RemoteSource source;
        if (remote.contains("endpoint")) {
            source.endpoint = get<std::string>(remote, "endpoint", "embed.remote", "");
        }
        source.fixture_dir = path_of(remote, "fixture_dir", "embed.remote", base_dir);
        if (source.endpoint.has_value() == source.fixture_dir.has_value()) {
            throw ConfigError("embed.remote needs exactly one of endpoint, fixture_dir");
        }
        source.config.batch_size = get<std::size_t>(remote, "batch_size", "embed.remote", source.config.batch_size);
        source.config.dims = get<std::size_t>(remote, "dims", "embed.remote", 0);
        source.timeout = std::chrono::milliseconds(get<std::int64_t>(remote, "timeout_ms", "embed.remote", 10000));
        if (source.config.batch_size == 0 || source.timeout.count() <= 0) {
            throw ConfigError("embed.remote: batch_size and timeout_ms must be positive");
        }
        config.remote = std::move(source);
    }

    const json& project = section(doc, "project");
    check_keys(project, "project", {"source", "method", "file"});
    const auto source = get<std::string>(project, "source", "project", "pca");
    if (source == "pca") {
        config.projection_source = ProjectionSource::pca;
    } else if (source == "file") {
        config.projection_source = ProjectionSource::file;
    } else {
        throw ConfigError("project.source must be pca or file");
    }
    if (project.contains("method")) {
        config.projection_method = method_of(get<std::string>(project, "method", "project", ""), "project.method");
        if (std::find(config.methods.begin(), config.methods.end(), *config.projection_method) ==
            config.methods.end()) {
            throw ConfigError("project.method is not one of embed.methods");
        }
    }
    config.projection_file = path_of(project, "file", "project", base_dir);
    if (config.projection_source == ProjectionSource::file && !config.projection_file) {
        throw ConfigError("project.source file needs project.file");
    }

    const json& exp = section(doc, "export");
    check_keys(exp, "export", {"corpus_json"});
    config.corpus_json = path_of(exp, "corpus_json", "export", base_dir).value_or(config.work_dir / "corpus.json");

    const json& srv = section(doc, "server");
    check_keys(srv, "server", {"host", "port", "threads", "cors_origin"});
    config.server.host = get<std::string>(srv, "host", "server", config.server.host);
    config.server.port = get<int>(srv, "port", "server", config.server.port);
    config.server.threads = get<std::size_t>(srv, "threads", "server", config.server.threads);
    config.server.cors_origin = get<std::string>(srv, "cors_origin", "server", config.server.cors_origin);
    if (config.server.port < 0 || config.server.port > 65535) {
        throw ConfigError("server.port out of range");
    }
    if (config.server.threads == 0) {
        throw ConfigError("server.threads must be at least 1");
    }
    return config;
}

PipelineConfig load_config(const fs::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    const fs::path base = fs::absolute(path).parent_path();
    return parse_config(doc, base);
}

}  // namespace litmap::pipeline
