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

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "litmap/clean/clean.hpp"
#include "litmap/core/corpus_json.hpp"
#include "litmap/core/io.hpp"
#include "litmap/core/log.hpp"
#include "litmap/embed/aggregate.hpp"
#include "litmap/index/flat_index.hpp"
#include "litmap/index/planar_index.hpp"
#include "litmap/index/search.hpp"
#include "litmap/meta/filter.hpp"
#include "litmap/meta/summary.hpp"
#include "litmap/pipeline/config.hpp"
#include "litmap/pipeline/stages.hpp"
#include "litmap/projection/projection.hpp"
#include "litmap/server/handlers.hpp"
#include "litmap/server/http_server.hpp"

namespace {

using namespace litmap;
using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kDistanceTol = 1e-9;
constexpr double kEmbedTol = 1e-9;
constexpr double kOrthogonalityRelTol = 1e-6;
constexpr double kPcaTol = 1e-9;
constexpr double kOracleBudgetSeconds = 10.0;
constexpr double kQueryBudgetMs = 250.0;
constexpr std::size_t kPerfRows = 59232;
constexpr std::size_t kPerfDims = 256;
constexpr std::size_t kPerfK = 25;
constexpr int kConcurrentClients = 32;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Failure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
    if (!condition) {
        throw Failure(what);
    }
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dims, double lo = -1, double hi = 1) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(dims);
    for (auto& x : v) x = d(rng);
    return v;
}

std::vector<PaperId> sequential_ids(std::size_t n) {
    std::vector<PaperId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = PaperId{static_cast<std::int64_t>(i)};
    return ids;
}

std::vector<index::SimilarityResult> brute_force(const std::vector<std::vector<double>>& rows,
                                                 const std::vector<double>& q, std::size_t k,
                                                 const index::IdSet& exclude = {}) {
    std::vector<index::SimilarityResult> all;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const PaperId id{static_cast<std::int64_t>(i)};
        if (exclude.contains(id)) continue;
        double s = 0;
        for (std::size_t d = 0; d < q.size(); ++d) {
            const double diff = static_cast<double>(static_cast<float>(rows[i][d])) - q[d];
            s += diff * diff;
        }
        all.push_back({id, std::sqrt(s), 0});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.paper_id < b.paper_id;
    });
    all.resize(std::min(k, all.size()));
    return all;
}

void require_same(const std::vector<index::SimilarityResult>& want, const std::vector<index::SimilarityResult>& got,
                  const std::string& where) {
    require(want.size() == got.size(), where + ": result count");
    for (std::size_t i = 0; i < want.size(); ++i) {
        require(want[i].paper_id == got[i].paper_id, where + ": id at rank " + std::to_string(i));
        require(std::abs(want[i].distance - got[i].distance) <= kDistanceTol, where + ": distance at rank " + std::to_string(i));
    }
}

Outcome knn_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 1000; ++i) rows.push_back(random_vector(rng, 64));
    const auto flat = index::FlatIndex::build(sequential_ids(1000), rows);
    for (int q = 0; q < 100; ++q) {
        const auto query = random_vector(rng, 64);
        require_same(brute_force(rows, query, 10), flat.knn(query, 10), "flat query " + std::to_string(q));
    }
    std::vector<std::vector<double>> plane;
    projection::PlanarCoordinates coords;
    coords.ids = sequential_ids(1000);
    for (int i = 0; i < 1000; ++i) {
        auto p = random_vector(rng, 2, -10, 10);
        p = {static_cast<float>(p[0]), static_cast<float>(p[1])};
        plane.push_back(p);
        coords.points.push_back({p[0], p[1]});
    }
    const auto planar = index::PlanarIndex::build(coords);
    for (int q = 0; q < 100; ++q) {
        const auto query = random_vector(rng, 2, -11, 11);
        require_same(brute_force(plane, query, 10), planar.knn(query, 10), "planar query " + std::to_string(q));
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    require(seconds < kOracleBudgetSeconds, "took " + std::to_string(seconds) + " s");
    std::ostringstream d;
    d << "200 queries identical to brute force in " << seconds << " s";
    return {true, d.str()};
}

Outcome scoring_law() {
    require(index::score_from_distance(0.0) == 1.0, "score(0) != 1");
    double prev = 1.0;
    for (int i = 1; i <= 1000; ++i) {
        const double s = index::score_from_distance(i * 0.05);
        require(s < prev && s > 0, "not strictly decreasing at grid point " + std::to_string(i));
        prev = s;
    }
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> rows;
        std::uniform_int_distribution<int> small(0, 2);
        for (int i = 0; i < 100; ++i) rows.push_back({double(small(rng)), double(small(rng))});
        const auto idx = index::FlatIndex::build(sequential_ids(100), rows);
        const auto got = idx.knn(std::vector<double>{1, 1}, 100);
        for (std::size_t i = 1; i < got.size(); ++i) {
            const auto& a = got[i - 1];
            const auto& b = got[i];
            require(a.distance < b.distance || (a.distance == b.distance && a.paper_id < b.paper_id),
                    "unsorted results in trial " + std::to_string(trial));
        }
    }
    return {true, "score(0)=1, 1000-point grid decreasing, 50 tie-heavy fixtures sorted"};
}

Outcome multi_seed() {
    std::mt19937_64 rng(3);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 300; ++i) rows.push_back(random_vector(rng, 16));
    rows[1] = rows[0];
    for (auto& x : rows[1]) x = -x;
    const auto idx = index::FlatIndex::build(sequential_ids(300), rows);
    const auto pair = index::search_by_seeds(idx, std::vector<PaperId>{PaperId{0}, PaperId{1}}, 25);
    const auto zero = idx.knn(std::vector<double>(16, 0.0), 25, {PaperId{0}, PaperId{1}});
    require(pair == zero, "{v,-v} differs from zero-vector query");
    for (int s = 2; s < 300; s += 37) {
        const PaperId id{s};
        const auto one = index::search_by_seeds(idx, std::vector<PaperId>{id}, 25);
        require(one == idx.knn(*idx.vector(id), 25, {id}), "singleton seed " + std::to_string(s));
    }
    return {true, "{v,-v} equals zero query; 8 singleton seeds equal direct query"};
}

Outcome cleaning_rules() {
    const clean::CleaningConfig config;
    clean::Draft base;
    base.title = std::string(40, 't');
    base.authors = {"A"};
    base.abstract = std::string(400, 'a');
    const std::vector<std::pair<std::size_t, bool>> title_cases = {{4, false}, {5, true}, {250, true}, {251, false}};
    for (auto [len, keep] : title_cases) {
        auto d = base;
        d.title = std::string(len, 'x');
        require(clean::apply_retention(d, config).kept() == keep, "title length " + std::to_string(len));
    }
    const std::vector<std::pair<std::size_t, bool>> abstract_cases = {{49, false}, {50, true}, {2500, true}, {2501, false}};
    for (auto [len, keep] : abstract_cases) {
        auto d = base;
        d.abstract = std::string(len, 'x');
        require(clean::apply_retention(d, config).kept() == keep, "abstract length " + std::to_string(len));
    }
    const auto synonyms = clean::SynonymMap::load(pipeline::data_dir() / "synonyms.json");
    require(clean::dedupe_and_merge_keywords(std::vector<std::string>{"HCI", "Human-Computer Interaction"}, synonyms) ==
                std::vector<std::string>{"Human-Computer Interaction"},
            "HCI pair did not merge");
    require(clean::dedupe_and_merge_keywords(std::vector<std::string>{"Visualization", "Visualisation"}, synonyms) ==
                std::vector<std::string>{"Visualization"},
            "Visualization pair did not merge");

    std::mt19937_64 rng(4);
    const std::vector<std::string> parts = {"G\xC3\xB6rg", "\xE3\x83\x87", "abc", " ", "\xFF", "Visualisation", "HCI"};
    auto text = [&](std::size_t max) {
        std::string s;
        for (std::size_t i = 0, n = rng() % max; i < n; ++i) s += parts[rng() % parts.size()];
        return s;
    };
    clean::CleaningConfig with_map;
    with_map.synonyms = synonyms;
    for (int corpus = 0; corpus < 1000; ++corpus) {
        std::vector<clean::Draft> drafts;
        for (std::size_t i = 0, n = rng() % 25; i < n; ++i) {
            clean::Draft d;
            d.id = PaperId{static_cast<std::int64_t>(i)};
            if (rng() % 8) d.title = text(40);
            if (rng() % 8) d.abstract = text(300);
            for (std::size_t a = 0, na = rng() % 3; a < na; ++a) d.authors.push_back(text(3));
            for (std::size_t k = 0, nk = rng() % 5; k < nk; ++k) d.keywords.push_back(text(2));
            drafts.push_back(std::move(d));
        }
        const auto r = clean::clean_corpus(drafts, with_map).report;
        require(r.input_count == drafts.size() && r.input_count == r.output_count + r.dropped_null + r.dropped_length,
                "conservation broken on corpus " + std::to_string(corpus));
    }
    return {true, "4/5/250/251 and 49/50/2500/2501 boundaries, both synonym pairs, 1000 corpora conserve"};
}

Outcome embedding_numerics() {
    embed::WordVectorTable table(2);
    const std::map<std::string, std::pair<double, double>> raw = {{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}, {"d", {2, -1}}};
    for (const auto& [t, v] : raw) table.add(t, std::vector<double>{v.first, v.second});

    const std::vector<embed::TokenList> tf_corpus = {{"a", "b"}, {"a", "c", "c"}, {"b", "d"}};
    const auto weights = embed::compute_tfidf(tf_corpus);
    const double l15 = std::log(1.5), l3 = std::log(3.0);
    const std::vector<std::vector<double>> tf_expected = {
        {0.5, 0.5}, {1.0, 2 * l3 / (l15 + 2 * l3)}, {2 * l3 / (l15 + l3), (l15 - l3) / (l15 + l3)}};
    for (std::size_t d = 0; d < tf_corpus.size(); ++d) {
        const auto e = embed::embed_tfidf(tf_corpus[d], weights[d], table);
        for (int i = 0; i < 2; ++i) {
            require(std::abs(e.vector[i] - tf_expected[d][i]) <= kEmbedTol, "tfidf doc " + std::to_string(d));
        }
    }

    const std::vector<embed::TokenList> sif_corpus = {{"a", "b", "a"}, {"c", "x"}, {"d", "b", "b", "c"}, {"a", "d"}};
    const double a = 1e-3;
    std::map<std::string, double> count;
    double total = 0;
    for (const auto& doc : sif_corpus) for (const auto& t : doc) { count[t] += 1; total += 1; }
    std::vector<std::vector<double>> vs;
    for (const auto& doc : sif_corpus) {
        double x = 0, y = 0, used = 0;
        for (const auto& t : doc) {
            auto it = raw.find(t);
            if (it == raw.end()) continue;
            const double w = a / (a + count[t] / total);
            x += w * it->second.first;
            y += w * it->second.second;
            used += 1;
        }
        vs.push_back({x / used, y / used});
    }
    double g00 = 0, g01 = 0, g11 = 0;
    for (const auto& v : vs) { g00 += v[0] * v[0]; g01 += v[0] * v[1]; g11 += v[1] * v[1]; }
    const double th = 0.5 * std::atan2(2 * g01, g00 - g11);
    std::vector<double> u = {std::cos(th), std::sin(th)};
    if (std::abs(u[1]) > std::abs(u[0]) ? u[1] < 0 : u[0] < 0) u = {-u[0], -u[1]};
    std::vector<embed::Embedded> got;
    embed::SifModel::fit(sif_corpus, table, embed::EmbedConfig{a}, &got);
    for (std::size_t d = 0; d < vs.size(); ++d) {
        const double p = u[0] * vs[d][0] + u[1] * vs[d][1];
        const double ex = vs[d][0] - p * u[0], ey = vs[d][1] - p * u[1];
        require(std::abs(ex - got[d].vector[0]) <= kEmbedTol && std::abs(ey - got[d].vector[1]) <= kEmbedTol,
                "sif doc " + std::to_string(d) + " differs from Jacobi oracle");
    }

    std::mt19937_64 rng(5);
    std::size_t checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        embed::WordVectorTable t(8);
        const double scale = trial % 3 == 0 ? 1e-30 : trial % 3 == 1 ? 1.0 : 1e30;
        for (int w = 0; w < 20; ++w) {
            auto v = random_vector(rng, 8);
            for (auto& x : v) x *= scale;
            t.add("w" + std::to_string(w), v);
        }
        std::vector<embed::TokenList> corpus(2 + rng() % 20);
        for (auto& doc : corpus) for (std::size_t i = 0, n = rng() % 10; i < n; ++i) doc.push_back("w" + std::to_string(rng() % 25));
        corpus[0].push_back("w1");
        const auto tw = embed::compute_tfidf(corpus);
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            for (double x : embed::embed_tfidf(corpus[d], tw[d], t).vector) require(std::isfinite(x), "tfidf produced non-finite");
        }
        std::vector<embed::Embedded> out;
        const auto model = embed::SifModel::fit(corpus, t, embed::EmbedConfig{}, &out);
        for (const auto& e : out) {
            double dot = 0, norm = 0;
            for (std::size_t i = 0; i < 8; ++i) {
                require(std::isfinite(e.vector[i]), "sif produced non-finite");
                dot += model.component()[i] * e.vector[i];
                norm += e.vector[i] * e.vector[i];
            }
            require(std::abs(dot) <= kOrthogonalityRelTol * std::sqrt(norm), "sif output not orthogonal to u");
            ++checked;
        }
    }
    return {true, "tfidf hand oracle and sif Jacobi oracle within 1e-9; " + std::to_string(checked) +
                      " fuzzed vectors finite and orthogonal"};
}

Outcome pca_projection() {
    std::mt19937_64 rng(6);
    const std::size_t n = 60, dims = 10;
    std::vector<std::pair<double, double>> plane(n);
    for (auto& p : plane) p = {random_vector(rng, 1, -5, 5)[0], random_vector(rng, 1, -5, 5)[0]};
    auto e1 = random_vector(rng, dims), e2 = random_vector(rng, dims);
    auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (std::size_t i = 0; i < dims; ++i) s += x[i] * y[i];
        return s;
    };
    const double n1 = std::sqrt(dot(e1, e1));
    for (auto& x : e1) x /= n1;
    const double pr = dot(e1, e2);
    for (std::size_t i = 0; i < dims; ++i) e2[i] -= pr * e1[i];
    const double n2 = std::sqrt(dot(e2, e2));
    for (auto& x : e2) x /= n2;
    const auto offset = random_vector(rng, dims, -50, 50);
    std::vector<double> m(n * dims), shifted(n * dims);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < dims; ++c) {
            m[r * dims + c] = offset[c] + plane[r].first * e1[c] + plane[r].second * e2[c];
            shifted[r * dims + c] = m[r * dims + c] + 1000.0 * static_cast<double>(c + 1);
        }
    }
    const auto ids = sequential_ids(n);
    const auto coords = projection::pca_project_2d(ids, {m.data(), n, dims});
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double want = std::hypot(plane[i].first - plane[j].first, plane[i].second - plane[j].second);
            const double have = std::hypot(coords.points[i].x - coords.points[j].x, coords.points[i].y - coords.points[j].y);
            worst = std::max(worst, std::abs(want - have));
        }
    }
    require(worst <= kPcaTol, "distance matrix error " + std::to_string(worst));
    const auto moved = projection::pca_project_2d(ids, {shifted.data(), n, dims});
    for (std::size_t i = 0; i < n; ++i) {
        require(std::abs(moved.points[i].x - coords.points[i].x) <= kPcaTol &&
                    std::abs(moved.points[i].y - coords.points[i].y) <= kPcaTol,
                "translation changed point " + std::to_string(i));
    }
    for (int run = 0; run < 5; ++run) {
        require(projection::pca_project_2d(ids, {m.data(), n, dims}).points == coords.points, "signs differ across runs");
    }
    std::ostringstream d;
    d << "max distance error " << worst << ", translation invariant, 5 identical runs";
    return {true, d.str()};
}

struct Spawned {
    pid_t pid = -1;
    int port = -1;
};

Spawned spawn_server(const fs::path& config) {
    int fds[2];
    require(pipe(fds) == 0, "pipe failed");
    const pid_t pid = fork();
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        close(fds[0]);
        close(fds[1]);
        execl(LITMAP_CLI_PATH, LITMAP_CLI_PATH, "serve", "--config", config.c_str(), "--port", "0", "--log-level",
              "warn", static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);
    std::string line;
    char c = 0;
    while (read(fds[0], &c, 1) == 1 && c != '\n') line += c;
    close(fds[0]);
    const auto colon = line.rfind(':');
    require(line.starts_with("listening on ") && colon != std::string::npos, "server did not start: '" + line + "'");
    return {pid, std::stoi(line.substr(colon + 1))};
}

int run_cli(const std::vector<std::string>& args) {
    std::string command = std::string("'") + LITMAP_CLI_PATH + "'";
    for (const auto& a : args) command += " '" + a + "'";
    command += " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path());
    }
    return out;
}

fs::path fresh_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("litmap-accept-" + tag + "-" + std::to_string(getpid()));
    fs::remove_all(dir);
    fs::copy(fs::path(LITMAP_FIXTURE_DIR) / "pipeline", dir, fs::copy_options::recursive);
    return dir;
}

fs::path g_pipeline_dir;

Outcome pipeline_determinism() {
    const auto first = fresh_dir("a");
    const auto second = fresh_dir("b");
    for (const auto& dir : {first, second}) {
        for (const char* stage : {"filter", "scrape", "clean", "embed", "project", "export"}) {
            require(run_cli({stage, "--config", (dir / "pipeline.json").string()}) == 0,
                    std::string("stage ") + stage + " failed");
        }
    }
    const auto a = tree(first / "work");
    const auto b = tree(second / "work");
    require(!a.empty() && a == b, "work directories differ");
    fs::remove_all(second);

    const auto server = spawn_server(first / "pipeline.json");
    httplib::Client client("127.0.0.1", server.port);
    const auto res = client.Get("/api/health");
    kill(server.pid, SIGTERM);
    int status = 0;
    waitpid(server.pid, &status, 0);
    require(res && res->status == 200, "health request failed");
    const auto expected = json::parse(read_file(first / "manifest.json")).at("cleaned").size();
    const auto papers = json::parse(res->body).at("papers").get<std::size_t>();
    require(papers == expected, "health reports " + std::to_string(papers) + " papers");
    require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "server did not exit cleanly on SIGTERM");
    g_pipeline_dir = first;
    return {true, std::to_string(a.size()) + " artifacts byte-identical across runs; live /api/health papers=" +
                      std::to_string(papers)};
}

Outcome api_contract() {
    require(!g_pipeline_dir.empty(), "pipeline run unavailable");
    const auto config = pipeline::load_config(g_pipeline_dir / "pipeline.json");
    const auto snap = server::load_snapshot(pipeline::snapshot_sources(config));
    const auto& records = snap->records().records();
    auto call = [&](const std::string& method, const std::string& path, meta::QueryParams params = {},
                    std::string body = {}) { return server::handle(*snap, {method, path, std::move(params), std::move(body)}); };

    std::vector<std::int64_t> paged;
    std::size_t offset = 0;
    for (;;) {
        const auto page = json::parse(call("GET", "/api/papers", {{"offset", std::to_string(offset)}, {"limit", "3"}}).body);
        require(page.at("total").get<std::size_t>() == records.size(), "total differs from corpus size");
        if (page.at("papers").empty()) break;
        for (const auto& p : page.at("papers")) paged.push_back(p.at("ID"));
        offset += 3;
    }
    std::vector<std::int64_t> all;
    for (const auto& r : records) all.push_back(to_int(r.id));
    require(paged == all, "pages do not tile the corpus");

    const std::vector<meta::QueryParams> filters = {
        {{"authors", "John T. Stasko"}},
        {{"authors", "John T. Stasko"}, {"source", "IEEE VAST"}},
        {{"year", "2010:2016"}, {"source", "CHI"}, {"source", "IEEE Trans. Vis. Comput. Graph."}},
        {{"q", "visual"}, {"year", ":2015"}},
        {{"citations", "10:"}, {"authors", "Alex Endert"}},
    };
    for (const auto& f : filters) {
        std::set<std::int64_t> oracle;
        for (const auto& r : records) {
            bool keep = true;
            std::map<std::string, std::set<std::string>> sets;
            for (const auto& [k, v] : f) sets[k].insert(v);
            for (const auto& [k, v] : f) {
                if (k == "year") {
                    const auto colon = v.find(':');
                    const std::string lo = v.substr(0, colon), hi = v.substr(colon + 1);
                    keep &= (lo.empty() || r.year >= std::stoi(lo)) && (hi.empty() || r.year <= std::stoi(hi));
                } else if (k == "citations") {
                    keep &= r.citation_count && *r.citation_count >= std::stoll(v.substr(0, v.find(':')));
                } else if (k == "q") {
                    std::string hay = r.title + "\n" + r.abstract;
                    for (const auto& a : r.authors) hay += "\n" + a;
                    for (const auto& kw : r.keywords) hay += "\n" + kw;
                    std::transform(hay.begin(), hay.end(), hay.begin(), [](unsigned char ch) { return std::tolower(ch); });
                    keep &= hay.find(v) != std::string::npos;
                }
            }
            if (sets.contains("authors")) {
                keep &= std::any_of(r.authors.begin(), r.authors.end(), [&](const auto& a) { return sets["authors"].contains(a); });
            }
            if (sets.contains("source")) keep &= sets["source"].contains(r.source);
            if (keep) oracle.insert(to_int(r.id));
        }
        std::set<std::int64_t> got;
        const auto listed = json::parse(call("GET", "/api/papers", f).body);
        for (const auto& p : listed.at("papers")) got.insert(p.at("ID").get<std::int64_t>());
        require(got == oracle, "filter conjunction differs from set oracle");
    }

    std::vector<std::int64_t> reversed(all.rbegin(), all.rend());
    const auto exported = json::parse(call("POST", "/api/export", {}, json(reversed).dump()).body);
    std::vector<std::int64_t> order;
    for (const auto& p : exported.at("papers")) order.push_back(p.at("ID"));
    require(order == reversed, "export order not preserved");
    const auto partial = json::parse(call("POST", "/api/export", {}, json({all[0], 999999}).dump()).body);
    require(partial.at("papers").size() == 1 && partial.at("rejects") == json({999999}), "export rejects wrong");

    require(call("POST", "/api/similarity", {}, R"({"mode":"by_papers","seed_ids":[999999]})").status == 404, "unknown seed not 404");
    require(call("GET", "/api/papers", {{"limit", "0"}}).status == 400, "limit=0 not 400");
    require(call("GET", "/api/papers", {{"year", "abc"}}).status == 400, "malformed filter not 400");
    require(call("GET", "/api/papers", {{"venue", "x"}}).status == 422, "unknown column not 422");
    require(call("POST", "/api/export", {}, "{").status == 400, "malformed body not 400");
    require(call("GET", "/api/missing").status == 404, "unknown route not 404");

    const std::vector<std::pair<std::string, std::string>> probes = {
        {"GET", "/api/health"},
        {"GET", "/api/papers?limit=3&offset=2"},
        {"GET", "/api/meta?authors=John%20T.%20Stasko"},
        {"GET", "/api/projection?seeds=0&outputs=1,2&saved=2&year=2012:"},
        {"POST", R"({"mode":"by_papers","seed_ids":[0,3],"k":4,"method":"sif"})"},
        {"POST", R"({"mode":"by_text","title":"Visual analytics of documents","method":"tfidf","k":3})"},
        {"POST", R"({"mode":"by_papers","seed_ids":[1],"dims":"planar","k":3})"},
    };
    server::ApiServer api(snap, server::ServerOptions{"127.0.0.1", 0, 32, "*"});
    const int port = api.start();
    auto send = [&](httplib::Client& c, const std::pair<std::string, std::string>& p) -> std::string {
        auto res = p.first == "GET" ? c.Get(p.second.c_str()) : c.Post("/api/similarity", p.second, "application/json");
        return res ? std::to_string(res->status) + " " + res->body : "error";
    };
    std::vector<std::string> reference;
    {
        httplib::Client c("127.0.0.1", port);
        for (const auto& p : probes) reference.push_back(send(c, p));
    }
    std::atomic<int> mismatches{0};
    std::vector<std::thread> clients;
    for (int t = 0; t < kConcurrentClients; ++t) {
        clients.emplace_back([&, t] {
            httplib::Client c("127.0.0.1", port);
            for (int round = 0; round < 5; ++round) {
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    const std::size_t pick = (i + static_cast<std::size_t>(t * 3 + round)) % probes.size();
                    if (send(c, probes[pick]) != reference[pick]) ++mismatches;
                }
            }
        });
    }
    for (auto& c : clients) c.join();
    api.stop();
    require(mismatches == 0, std::to_string(mismatches.load()) + " concurrent bodies differed");
    return {true, "pagination, 5 filter oracles, export order/rejects, 404/400/422, " +
                      std::to_string(kConcurrentClients) + " concurrent clients identical"};
}

Outcome performance() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<float> d(-1.0f, 1.0f);
    embed::EmbeddingSet set;
    set.method = embed::Method::remote;
    set.dims = kPerfDims;
    std::vector<float> row(kPerfDims);
    for (std::size_t i = 0; i < kPerfRows; ++i) {
        for (auto& x : row) x = d(rng);
        set.add(PaperId{static_cast<std::int64_t>(i)}, std::span<const float>(row));
    }
    const auto idx = index::FlatIndex::build(std::move(set));
    double worst_ms = 0;
    for (int q = 0; q < 5; ++q) {
        const auto query = random_vector(rng, kPerfDims);
        const auto start = Clock::now();
        const auto res = idx.knn(query, kPerfK);
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        require(res.size() == kPerfK, "short result");
        worst_ms = std::max(worst_ms, ms);
    }
    std::ostringstream out;
    out << "worst of 5 queries " << worst_ms << " ms over " << kPerfRows << "x" << kPerfDims << " (budget "
        << kQueryBudgetMs << " ms)";
    require(worst_ms < kQueryBudgetMs, out.str());
    return {true, out.str()};
}

Outcome released_corpus() {
    const char* path = std::getenv("LITMAP_RELEASED_CORPUS");
    if (path == nullptr || !fs::exists(path)) {
        return {true, "SKIP"};
    }
    const RecordStore store(read_corpus(path));
    const auto summary = meta::summarize(store.records());
    std::ostringstream d;
    d << "records " << store.size() << ", keywords " << summary[meta::Facet::keywords].distinct_count << ", authors "
      << summary[meta::Facet::authors].distinct_count << ", sources " << summary[meta::Facet::source].distinct_count
      << ", years " << summary[meta::Facet::year].distinct_count;
    const auto stasko_ids = meta::apply_filters(store, meta::parse_filter({{"authors", "John T. Stasko"}}));
    const auto stasko = meta::summarize(store, stasko_ids);
    auto count_of = [&](meta::Facet f, const std::string& value) -> std::size_t {
        for (const auto& e : stasko[f].entries) if (e.value == value) return e.count;
        return 0;
    };
    d << "; stasko " << stasko_ids.size() << " (TVCG " << count_of(meta::Facet::source, "IEEE Trans. Vis. Comput. Graph.")
      << ", VAST " << count_of(meta::Facet::source, "IEEE VAST") << ", 2007 " << count_of(meta::Facet::year, "2007") << ", 2008 " << count_of(meta::Facet::year, "2008") << ")";
    const bool ok = store.size() == 59232 && summary[meta::Facet::keywords].distinct_count == 49278 &&
                    summary[meta::Facet::authors].distinct_count == 82391 &&
                    summary[meta::Facet::source].distinct_count == 55 && summary[meta::Facet::year].distinct_count == 47 &&
                    stasko_ids.size() == 80 && count_of(meta::Facet::source, "IEEE Trans. Vis. Comput. Graph.") == 21 &&
                    count_of(meta::Facet::source, "IEEE VAST") == 15 && count_of(meta::Facet::year, "2007") == 11 && count_of(meta::Facet::year, "2008") == 10;
    return {ok, d.str()};
}

}  // namespace

int main() {
    litmap::log::configure(litmap::log::Format::text, "error");
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"knn oracle equivalence", knn_oracle},
        {"scoring law", scoring_law},
        {"multi-seed centroid", multi_seed},
        {"cleaning rules", cleaning_rules},
        {"tfidf/sif numerics", embedding_numerics},
        {"pca projection", pca_projection},
        {"parser + pipeline determinism", pipeline_determinism},
        {"api contract", api_contract},
        {"performance budget", performance},
        {"released corpus (dataset-gated, optional)", released_corpus},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, e.what()};
        }
        const char* verdict = outcome.detail == "SKIP" ? "SKIP" : outcome.pass ? "PASS" : "FAIL";
        if (!outcome.pass) ++failures;
        std::cout << verdict << "  " << name << "  " << (outcome.detail == "SKIP" ? "dataset not present" : outcome.detail)
                  << std::endl;
    }
    if (!g_pipeline_dir.empty()) {
        std::error_code ec;
        fs::remove_all(g_pipeline_dir, ec);
    }
    return failures == 0 ? 0 : 1;
}
