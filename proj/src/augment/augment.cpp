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

#include "litmap/augment/augment.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "litmap/core/log.hpp"

namespace litmap::augment {
namespace {

AugmentedRecord augment_one(const ingest::IdentifiedRecord& record, Fetcher& fetcher,
                            const ProfileSet& profiles, std::optional<AugmentFailure>& failure) {
    AugmentedRecord out{record, {}, std::nullopt};
    const std::string& url = record.record.url;
    try {
        if (url.empty()) {
            throw InvalidUrl("record has no url");
        }
        FetchResult fetched = fetcher.fetch(url);
        out.fetched_at = fetched.response.fetched_at;
        out.metadata = extract_metadata(fetched.response.body, fetched.response.final_url, profiles);
    } catch (const Error& e) {
        out.metadata = PageMetadata{};
        failure = AugmentFailure{record.id, url, e.what()};
    }
    return out;
}

}  // namespace

std::vector<AugmentedRecord> augment_corpus(std::span<const ingest::IdentifiedRecord> records,
                                            Fetcher& fetcher, const ProfileSet& profiles,
                                            AugmentReport& report, std::size_t workers) {
    std::vector<AugmentedRecord> out(records.size());
    std::vector<std::optional<AugmentFailure>> failures(records.size());

    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (std::size_t i = cursor++; i < records.size(); i = cursor++) {
            out[i] = augment_one(records[i], fetcher, profiles, failures[i]);
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, records.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    report.processed += records.size();
    for (auto& f : failures) {
        if (f) {
            log::warn("scrape failed for id " + std::to_string(to_int(f->id)) + " (" + f->url + "): " + f->reason);
            report.failures.push_back(std::move(*f));
        }
    }
    return out;
}

nlohmann::json to_json(const AugmentedRecord& record) {
    nlohmann::json out = ingest::to_json(record.base);
    const auto& m = record.metadata;
    out["abstract"] = m.abstract ? nlohmann::json(*m.abstract) : nlohmann::json(nullptr);
    out["keywords"] = m.keywords ? nlohmann::json(*m.keywords) : nlohmann::json(nullptr);
    out["citation_count"] = m.citation_count ? nlohmann::json(*m.citation_count) : nlohmann::json(nullptr);
    out["fetched_at"] = record.fetched_at ? nlohmann::json(*record.fetched_at) : nlohmann::json(nullptr);
    return out;
}

AugmentedRecord augmented_from_json(const nlohmann::json& object) {
    AugmentedRecord out;
    out.base = ingest::identified_from_json(object);
    try {
        if (auto it = object.find("abstract"); it != object.end() && !it->is_null()) {
            out.metadata.abstract = it->get<std::string>();
        }
        if (auto it = object.find("keywords"); it != object.end() && !it->is_null()) {
            out.metadata.keywords = it->get<std::vector<std::string>>();
        }
        if (auto it = object.find("citation_count"); it != object.end() && !it->is_null()) {
            const auto count = it->get<std::int64_t>();
            if (count < 0) {
                throw Error("negative citation_count");
            }
            out.metadata.citation_count = count;
        }
        if (auto it = object.find("fetched_at"); it != object.end() && !it->is_null()) {
            out.fetched_at = it->get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad augmented record: ") + e.what());
    }
    return out;
}

}  // namespace litmap::augment
