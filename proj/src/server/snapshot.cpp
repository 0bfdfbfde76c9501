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

#include "litmap/server/snapshot.hpp"

#include <algorithm>
#include <unordered_set>

#include "litmap/core/corpus_json.hpp"
#include "litmap/core/log.hpp"
#include "litmap/embed/text.hpp"

namespace litmap::server {
namespace {

void require_cover(const RecordStore& records, std::span<const PaperId> ids, const std::string& what) {
    if (ids.size() != records.size()) {
        throw SnapshotError(what + " holds " + std::to_string(ids.size()) + " papers, corpus holds " +
                            std::to_string(records.size()));
    }
    for (PaperId id : ids) {
        if (records.find(id) == nullptr) {
            throw SnapshotError(what + " names paper " + std::to_string(to_int(id)) + " not in the corpus");
        }
    }
}

std::vector<embed::TokenList> corpus_tokens(std::span<const PaperRecord> records) {
    std::vector<embed::TokenList> docs;
    docs.reserve(records.size());
    for (const auto& r : records) {
        docs.push_back(embed::document_tokens(r.title, r.abstract));
    }
    return docs;
}

embed::EmbeddingSet restrict_to(embed::EmbeddingSet set, const RecordStore& records) {
    embed::EmbeddingSet kept;
    kept.method = set.method;
    kept.dims = set.dims;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (records.find(set.ids[i]) != nullptr) {
            kept.ids.push_back(set.ids[i]);
            const auto row = set.row(i);
            kept.data.insert(kept.data.end(), row.begin(), row.end());
        }
    }
    if (kept.size() != set.size()) {
        log::warn(std::string(embed::method_name(set.method)) + ": ignoring " +
                  std::to_string(set.size() - kept.size()) + " vectors of papers outside the corpus");
    }
    return kept;
}

}  // namespace

Snapshot::Snapshot(RecordStore records, std::vector<MethodIndex> methods,
                   std::optional<projection::PlanarCoordinates> projection)
    : records_(std::move(records)), methods_(std::move(methods)) {
    std::sort(methods_.begin(), methods_.end(),
              [](const MethodIndex& a, const MethodIndex& b) { return a.method < b.method; });
    for (std::size_t i = 0; i < methods_.size(); ++i) {
        const auto name = std::string(embed::method_name(methods_[i].method));
        if (i > 0 && methods_[i].method == methods_[i - 1].method) {
            throw SnapshotError("embedding method " + name + " loaded twice");
        }
        if (!methods_[i].index) {
            throw SnapshotError("embedding method " + name + " has no index");
        }
        require_cover(records_, methods_[i].index->ids(), name + " embeddings");
    }
    if (projection) {
        require_cover(records_, projection->ids, "projection");
        std::unordered_map<PaperId, projection::Point> by_id;
        for (std::size_t i = 0; i < projection->size(); ++i) {
            by_id.emplace(projection->ids[i], projection->points[i]);
        }
        projection->ids = records_.ids();
        for (std::size_t i = 0; i < projection->ids.size(); ++i) {
            projection->points[i] = by_id.at(projection->ids[i]);
        }
        planar_ = index::PlanarIndex::build(*projection);
        projection_ = std::move(projection);
    }
}

const MethodIndex* Snapshot::method(embed::Method method) const noexcept {
    for (const auto& m : methods_) {
        if (m.method == method) {
            return &m;
        }
    }
    return nullptr;
}

std::shared_ptr<const embed::WordVectorTable> load_corpus_word_vectors(const std::filesystem::path& path,
                                                                       std::span<const PaperRecord> records) {
    std::unordered_set<std::string> vocabulary;
    for (const auto& doc : corpus_tokens(records)) {
        vocabulary.insert(doc.begin(), doc.end());
    }
    return std::make_shared<const embed::WordVectorTable>(embed::WordVectorTable::load_text(path, &vocabulary));
}

TextEmbedder make_tfidf_embedder(std::span<const PaperRecord> records,
                                 std::shared_ptr<const embed::WordVectorTable> table) {
    const auto docs = corpus_tokens(records);
    auto model = std::make_shared<const embed::TfidfModel>(embed::TfidfModel::fit(docs));
    return [model, table](std::string_view title, std::string_view abstract) {
        const auto tokens = embed::document_tokens(title, abstract);
        return embed::embed_tfidf(tokens, model->weights(tokens), *table).vector;
    };
}

TextEmbedder make_sif_embedder(std::span<const PaperRecord> records,
                               std::shared_ptr<const embed::WordVectorTable> table,
                               const embed::EmbedConfig& config) {
    const auto docs = corpus_tokens(records);
    auto model = std::make_shared<const embed::SifModel>(embed::SifModel::fit(docs, *table, config));
    return [model, table](std::string_view title, std::string_view abstract) {
        return model->embed(embed::document_tokens(title, abstract)).vector;
    };
}

std::unique_ptr<embed::EmbeddingBackend> make_backend(const RemoteSource& source) {
    if (source.endpoint) {
        return std::make_unique<embed::HttpEmbeddingBackend>(*source.endpoint, source.timeout);
    }
    if (source.fixture_dir) {
        return std::make_unique<embed::FixtureEmbeddingBackend>(*source.fixture_dir);
    }
    throw SnapshotError("remote embedder needs an endpoint or a fixture directory");
}

TextEmbedder make_remote_embedder(const RemoteSource& source) {
    struct Remote {
        std::unique_ptr<embed::EmbeddingBackend> backend;
        std::unique_ptr<embed::RemoteEmbedder> embedder;
    };
    auto remote = std::make_shared<Remote>();
    remote->backend = make_backend(source);
    remote->embedder = std::make_unique<embed::RemoteEmbedder>(*remote->backend, source.config);
    return [remote](std::string_view title, std::string_view abstract) {
        return remote->embedder->embed(title, abstract);
    };
}

std::shared_ptr<const Snapshot> load_snapshot(const SnapshotSources& sources) {
    RecordStore records(read_corpus(sources.corpus));
    log::info("loaded " + std::to_string(records.size()) + " papers from " + sources.corpus.string());

    std::shared_ptr<const embed::WordVectorTable> table;
    const bool needs_table = sources.embeddings.contains(embed::Method::tfidf) ||
                             sources.embeddings.contains(embed::Method::sif);
    if (needs_table && sources.word_vectors) {
        table = load_corpus_word_vectors(*sources.word_vectors, records.records());
    }

    std::vector<MethodIndex> methods;
    for (const auto& [method, path] : sources.embeddings) {
        auto set = embed::load_embeddings(path);
        if (set.method != method) {
            throw SnapshotError(path.string() + " holds " + std::string(embed::method_name(set.method)) +
                                " embeddings, expected " + std::string(embed::method_name(method)));
        }
        set = restrict_to(std::move(set), records);
        MethodIndex entry;
        entry.method = method;
        entry.index = std::make_shared<const index::FlatIndex>(index::FlatIndex::build(std::move(set)));
        switch (method) {
            case embed::Method::tfidf:
                if (table) {
                    entry.text = make_tfidf_embedder(records.records(), table);
                }
                break;
            case embed::Method::sif:
                if (table) {
                    entry.text = make_sif_embedder(records.records(), table, sources.embed);
                }
                break;
            case embed::Method::remote:
                if (sources.remote) {
                    entry.text = make_remote_embedder(*sources.remote);
                }
                break;
        }
        if (!entry.text) {
            log::warn(std::string(embed::method_name(method)) + ": no text embedder, by_text search disabled");
        }
        log::info("indexed " + std::to_string(entry.index->size()) + " " +
                  std::string(embed::method_name(method)) + " vectors of " + std::to_string(entry.index->dims()) +
                  " dims");
        methods.push_back(std::move(entry));
    }

    std::optional<projection::PlanarCoordinates> coords;
    if (sources.projection) {
        const auto ids = records.ids();
        coords = projection::load_projection(*sources.projection, ids);
        if (coords->extra_ids > 0) {
            log::warn("projection names " + std::to_string(coords->extra_ids) + " papers outside the corpus");
        }
    }
    return std::make_shared<const Snapshot>(std::move(records), std::move(methods), std::move(coords));
}

}  // namespace litmap::server
