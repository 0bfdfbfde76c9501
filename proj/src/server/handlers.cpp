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

#include "litmap/server/handlers.hpp"

#include <charconv>
#include <limits>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "litmap/core/corpus_json.hpp"
#include "litmap/index/search.hpp"
#include "litmap/meta/summary.hpp"

namespace litmap::server {
namespace {

using nlohmann::json;

class ApiError : public std::runtime_error {
   public:
    ApiError(int status, std::string code, const std::string& detail)
        : std::runtime_error(detail), status_(status), code_(std::move(code)) {}
    int status() const noexcept { return status_; }
    const std::string& code() const noexcept { return code_; }

   private:
    int status_;
    std::string code_;
};

ApiError bad_request(const std::string& detail) { return {400, "bad_request", detail}; }

Response json_response(const json& body, int status = 200) { return {status, body.dump(), "application/json"}; }

Response error_response(int status, const std::string& code, const std::string& detail) {
    return json_response({{"error", code}, {"detail", detail}}, status);
}

std::size_t parse_count(const std::string& name, const std::string& value) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
        throw bad_request(name + " must be a non-negative integer");
    }
    return out;
}

std::int64_t parse_id(std::string_view text, const std::string& name) {
    std::int64_t id = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw bad_request(name + ": '" + std::string(text) + "' is not a paper id");
    }
    return id;
}

/// Splits reserved parameters from filter parameters.
meta::QueryParams take(meta::QueryParams& params, std::initializer_list<std::string_view> reserved) {
    meta::QueryParams taken;
    meta::QueryParams rest;
    for (auto& p : params) {
        bool is_reserved = false;
        for (auto r : reserved) {
            is_reserved = is_reserved || p.first == r;
        }
        (is_reserved ? taken : rest).push_back(std::move(p));
    }
    params = std::move(rest);
    return taken;
}

meta::FilterSpec filter_of(const meta::QueryParams& params) {
    try {
        return meta::parse_filter(params);
    } catch (const meta::UnknownColumn& e) {
        throw ApiError(422, "unknown_column", e.what());
    } catch (const meta::MalformedFilter& e) {
        throw ApiError(400, "malformed_filter", e.what());
    }
}

std::vector<PaperId> filtered_ids(const Snapshot& snapshot, const meta::FilterSpec& spec) {
    return meta::apply_filters(snapshot.records(), spec);
}

Response health(const Snapshot& snapshot) {
    json methods = json::array();
    for (const auto& m : snapshot.methods()) {
        methods.push_back(embed::method_name(m.method));
    }
    return json_response({{"papers", snapshot.records().size()},
                          {"methods", std::move(methods)},
                          {"projection", snapshot.projection() != nullptr}});
}

Response papers(const Snapshot& snapshot, meta::QueryParams params) {
    std::size_t offset = 0;
    std::size_t limit = kDefaultPageSize;
    for (const auto& [name, value] : take(params, {"offset", "limit"})) {
        (name == "offset" ? offset : limit) = parse_count(name, value);
    }
    if (limit < 1 || limit > kMaxPageSize) {
        throw bad_request("limit must be in [1, " + std::to_string(kMaxPageSize) + "]");
    }
    const auto spec = filter_of(params);
    json page = json::array();
    std::size_t total = 0;
    for (const auto& r : snapshot.records().records()) {
        if (!spec.empty() && !meta::matches(r, spec)) {
            continue;
        }
        if (total >= offset && total - offset < limit) {
            page.push_back(to_corpus_json(r));
        }
        ++total;
    }
    return json_response({{"total", total}, {"offset", offset}, {"limit", limit}, {"papers", std::move(page)}});
}

Response meta_summary(const Snapshot& snapshot, meta::QueryParams params) {
    std::size_t top = 0;
    for (const auto& [name, value] : take(params, {"top"})) {
        top = parse_count(name, value);
    }
    const auto spec = filter_of(params);
    const auto ids = filtered_ids(snapshot, spec);
    return json_response(meta::to_json(meta::summarize(snapshot.records(), ids), top));
}

std::vector<PaperId> id_list(const meta::QueryParams& params, const std::string& name) {
    std::vector<PaperId> ids;
    for (const auto& [key, value] : params) {
        if (key != name) {
            continue;
        }
        std::string_view rest = value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            ids.push_back(PaperId{parse_id(rest.substr(0, comma), name)});
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }
    return ids;
}

Response projection_states(const Snapshot& snapshot, meta::QueryParams params) {
    const auto* coords = snapshot.projection();
    if (coords == nullptr) {
        throw ApiError(503, "no_projection", "no projection loaded");
    }
    const auto context = take(params, {"seeds", "outputs", "saved"});
    const auto seeds = id_list(context, "seeds");
    const auto outputs = id_list(context, "outputs");
    const auto saved = id_list(context, "saved");
    const std::unordered_set<PaperId> seed_set(seeds.begin(), seeds.end());
    const std::unordered_set<PaperId> output_set(outputs.begin(), outputs.end());
    const std::unordered_set<PaperId> saved_set(saved.begin(), saved.end());
    const auto spec = filter_of(params);

    json out = json::array();
    const auto records = snapshot.records().records();
    for (std::size_t i = 0; i < coords->size(); ++i) {
        const PaperId id = coords->ids[i];
        const char* state = "unfiltered";
        if (saved_set.contains(id)) {
            state = "saved";
        } else if (seed_set.contains(id)) {
            state = "similarity_input";
        } else if (output_set.contains(id)) {
            state = "similarity_output";
        } else if (!spec.empty() && !meta::matches(records[i], spec)) {
            state = "filtered";
        }
        out.push_back({{"paper_id", to_int(id)}, {"x", coords->points[i].x}, {"y", coords->points[i].y},
                       {"state", state}});
    }
    return json_response(out);
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw bad_request(std::string("body is not JSON: ") + e.what());
    }
}

const std::string& string_field(const json& body, const char* key, const std::string& fallback) {
    if (!body.contains(key)) {
        return fallback;
    }
    if (!body[key].is_string()) {
        throw bad_request(std::string(key) + " must be a string");
    }
    return body[key].get_ref<const std::string&>();
}

Response similarity(const Snapshot& snapshot, const std::string& raw) {
    const json body = parse_body(raw);
    if (!body.is_object()) {
        throw bad_request("body must be an object");
    }
    static const std::string kEmpty;
    const std::string mode = string_field(body, "mode", kEmpty);
    if (mode != "by_papers" && mode != "by_text") {
        throw bad_request("mode must be by_papers or by_text");
    }
    const std::string dims = string_field(body, "dims", "full");
    if (dims != "full" && dims != "planar") {
        throw bad_request("dims must be full or planar");
    }
    std::size_t k = kDefaultK;
    if (body.contains("k")) {
        const auto& kv = body["k"];
        if (!kv.is_number_integer() || kv.get<std::int64_t>() < 1) {
            throw bad_request("k must be an integer >= 1");
        }
        k = kv.get<std::size_t>();
    }

    const index::NeighborIndex* target = nullptr;
    const MethodIndex* method = nullptr;
    if (dims == "planar") {
        target = snapshot.planar_index();
        if (target == nullptr) {
            throw ApiError(503, "no_projection", "no projection loaded");
        }
    } else {
        if (body.contains("method")) {
            embed::Method tag{};
            try {
                tag = embed::parse_method(string_field(body, "method", kEmpty));
            } catch (const std::invalid_argument& e) {
                throw bad_request(e.what());
            }
            method = snapshot.method(tag);
            if (method == nullptr) {
                throw bad_request("no " + std::string(embed::method_name(tag)) + " embeddings loaded");
            }
        } else if (!snapshot.methods().empty()) {
            method = &snapshot.methods().front();
        } else {
            throw ApiError(503, "no_embeddings", "no embeddings loaded");
        }
        target = method->index.get();
    }

    std::vector<index::SimilarityResult> results;
    if (mode == "by_papers") {
        if (body.contains("title") || body.contains("abstract")) {
            throw bad_request("by_papers takes seed_ids only");
        }
        if (!body.contains("seed_ids") || !body["seed_ids"].is_array() || body["seed_ids"].empty()) {
            throw bad_request("seed_ids must be a non-empty array");
        }
        std::vector<PaperId> seeds;
        for (const auto& v : body["seed_ids"]) {
            if (!v.is_number_integer()) {
                throw bad_request("seed_ids must hold integers");
            }
            seeds.push_back(PaperId{v.get<std::int64_t>()});
        }
        try {
            results = index::search_by_seeds(*target, seeds, k);
        } catch (const index::UnknownSeedId& e) {
            throw ApiError(404, "unknown_seed", e.what());
        }
    } else {
        if (body.contains("seed_ids")) {
            throw bad_request("by_text takes title and abstract only");
        }
        if (dims == "planar") {
            throw bad_request("by_text search needs full dims");
        }
        const std::string& title = string_field(body, "title", kEmpty);
        const std::string& abstract = string_field(body, "abstract", kEmpty);
        if (title.empty() && abstract.empty()) {
            throw bad_request("by_text needs a title or an abstract");
        }
        if (!method->text) {
            throw ApiError(503, "text_embedder_unavailable",
                           std::string(embed::method_name(method->method)) + " cannot embed new text");
        }
        std::vector<double> query;
        try {
            query = method->text(title, abstract);
        } catch (const embed::RemoteUnavailable& e) {
            throw ApiError(503, "remote_embedder_unavailable", e.what());
        } catch (const embed::DimensionMismatch& e) {
            throw ApiError(502, "bad_upstream_embedding", e.what());
        }
        try {
            results = target->knn(query, k);
        } catch (const index::DimensionMismatch& e) {
            throw ApiError(502, "bad_upstream_embedding", e.what());
        }
    }

    json out = json::array();
    for (const auto& r : results) {
        const PaperRecord* record = snapshot.records().find(r.paper_id);
        out.push_back({{"paper_id", to_int(r.paper_id)},
                       {"distance", r.distance},
                       {"score", r.score},
                       {"title", record->title},
                       {"source", record->source},
                       {"year", record->year}});
    }
    return json_response(out);
}

Response export_papers(const Snapshot& snapshot, const std::string& raw) {
    const json body = parse_body(raw);
    if (!body.is_array()) {
        throw bad_request("body must be an array of paper ids");
    }
    json papers = json::array();
    json rejects = json::array();
    for (const auto& v : body) {
        if (!v.is_number_integer()) {
            throw bad_request("body must be an array of paper ids");
        }
        const auto id = v.get<std::int64_t>();
        if (const PaperRecord* r = snapshot.records().find(PaperId{id})) {
            papers.push_back(to_corpus_json(*r));
        } else {
            rejects.push_back(id);
        }
    }
    return json_response({{"papers", std::move(papers)}, {"rejects", std::move(rejects)}});
}

Response route(const Snapshot& snapshot, const Request& request) {
    struct Route {
        const char* path;
        const char* method;
    };
    static constexpr Route kRoutes[] = {{"/api/health", "GET"},     {"/api/papers", "GET"},
                                        {"/api/similarity", "POST"}, {"/api/meta", "GET"},
                                        {"/api/projection", "GET"},  {"/api/export", "POST"}};
    for (const auto& r : kRoutes) {
        if (request.path != r.path) {
            continue;
        }
        if (request.method != r.method) {
            throw ApiError(405, "method_not_allowed", request.path + " accepts " + r.method);
        }
        const std::string_view path = r.path;
        if (path == "/api/health") {
            return health(snapshot);
        }
        if (path == "/api/papers") {
            return papers(snapshot, request.params);
        }
        if (path == "/api/similarity") {
            return similarity(snapshot, request.body);
        }
        if (path == "/api/meta") {
            return meta_summary(snapshot, request.params);
        }
        if (path == "/api/projection") {
            return projection_states(snapshot, request.params);
        }
        return export_papers(snapshot, request.body);
    }
    throw ApiError(404, "not_found", "no route for " + request.path);
}

}  // namespace

Response handle(const Snapshot& snapshot, const Request& request) {
    try {
        return route(snapshot, request);
    } catch (const ApiError& e) {
        return error_response(e.status(), e.code(), e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

}  // namespace litmap::server
