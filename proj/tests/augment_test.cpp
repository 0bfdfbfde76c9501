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

#include <atomic>
#include <chrono>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "litmap/augment/augment.hpp"
#include "litmap/augment/extract.hpp"
#include "litmap/augment/fetch.hpp"
#include "litmap/augment/transport.hpp"
#include "test_support.hpp"

namespace {

using namespace litmap;
using namespace litmap::augment;

const std::filesystem::path kProfiles = std::filesystem::path(LITMAP_DATA_DIR_FOR_TESTS) / "publishers";

/// Replies from a per-URL script; the last entry repeats.
class ScriptedTransport final : public Transport {
   public:
    struct Step {
        int status = 200;
        std::string body;
        bool timeout = false;
    };

    void script(const std::string& url, std::vector<Step> steps) { scripts_[url] = {steps.begin(), steps.end()}; }

    HttpResponse get(const std::string& url, const FetchPolicy&) override {
        std::lock_guard lock(mutex_);
        ++calls_;
        auto& steps = scripts_.at(url);
        Step step = steps.front();
        if (steps.size() > 1) {
            steps.pop_front();
        }
        if (step.timeout) {
            throw TransportFailure("timed out", true);
        }
        return HttpResponse{step.status, step.body, {}, {}};
    }

    int calls() const { return calls_; }

   private:
    std::mutex mutex_;
    std::map<std::string, std::deque<Step>> scripts_;
    int calls_ = 0;
};

FetchPolicy fast_policy() {
    FetchPolicy p;
    p.min_interval_ms = 0;
    p.max_retries = 3;
    return p;
}

const std::string kAcmPage =
    "<html><body>"
    "<div class=\"abstractSection abstractInFull\"><p>We present a system &amp; evaluate it.</p></div>"
    "<div class=\"tags-widget__content\"><a href=\"/k/1\">Visual analytics</a><a href=\"/k/2\">Sensemaking</a>"
    "<a href=\"/k/3\">Text</a><a href=\"/k/4\">Documents</a><a href=\"/k/5\">Investigation</a></div>"
    "<span class=\"citation\"><span class=\"bold\">12</span> citations</span>"
    "</body></html>";

TEST(FixtureTransport, HitReturnsStoredBytes) {
    test_support::TempDir dir;
    FixtureStore store(dir.path());
    store.put("https://dl.acm.org/doi/1", "page1", 200, "2021-01-01T00:00:00Z");
    FixtureTransport transport{FixtureStore(dir.path())};
    Fetcher fetcher(fast_policy(), transport);
    const auto result = fetcher.fetch("https://dl.acm.org/doi/1");
    EXPECT_EQ("page1", result.response.body);
    EXPECT_EQ("https://dl.acm.org/doi/1", result.response.final_url);
    EXPECT_EQ("2021-01-01T00:00:00Z", result.response.fetched_at.value_or(""));
    EXPECT_EQ(1, result.attempts);
}

TEST(FixtureTransport, MissIsNotRetried) {
    test_support::TempDir dir;
    FixtureTransport transport{FixtureStore(dir.path())};
    Fetcher fetcher(fast_policy(), transport);
    try {
        fetcher.fetch("https://dl.acm.org/doi/2");
        FAIL() << "expected FixtureMiss";
    } catch (const FixtureMiss& e) {
        EXPECT_EQ("https://dl.acm.org/doi/2", e.url());
    }
}

TEST(FixtureStore, IndexPersistsAcrossInstances) {
    test_support::TempDir dir;
    {
        FixtureStore store(dir.path());
        store.put("https://a.example/x", "body-x", 200, std::nullopt, "https://b.example/y");
    }
    FixtureStore reopened(dir.path());
    ASSERT_EQ(1u, reopened.size());
    const auto entry = reopened.find("https://a.example/x");
    ASSERT_TRUE(entry.has_value());
    EXPECT_EQ("body-x", reopened.read_body(*entry));
    EXPECT_EQ("https://b.example/y", entry->final_url);
    EXPECT_FALSE(reopened.find("https://a.example/other").has_value());
}

TEST(RateLimiter, SequentialFetchesToOneHostAreSpaced) {
    ScriptedTransport transport;
    transport.script("https://dl.acm.org/p", {{200, "ok"}});
    FetchPolicy policy = fast_policy();
    policy.min_interval_ms = 100;
    Fetcher fetcher(policy, transport);
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 5; ++i) {
        fetcher.fetch("https://dl.acm.org/p");
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_GE(elapsed, std::chrono::milliseconds(400));
}

TEST(RateLimiter, DifferentHostsDoNotWaitOnEachOther) {
    RateLimiter limiter(std::chrono::milliseconds(300));
    const auto start = std::chrono::steady_clock::now();
    { auto p = limiter.acquire("a.example"); }
    { auto p = limiter.acquire("b.example"); }
    { auto p = limiter.acquire("c.example"); }
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(300));
}

TEST(Fetcher, RetriesServerErrorsThenSucceeds) {
    ScriptedTransport transport;
    transport.script("https://x.example/a", {{503, ""}, {429, ""}, {200, "fine"}});
    Fetcher fetcher(fast_policy(), transport);
    const auto result = fetcher.fetch("https://x.example/a");
    EXPECT_EQ("fine", result.response.body);
    EXPECT_EQ(3, result.attempts);
}

TEST(Fetcher, ClientErrorFailsImmediately) {
    ScriptedTransport transport;
    transport.script("https://x.example/a", {{404, ""}});
    Fetcher fetcher(fast_policy(), transport);
    try {
        fetcher.fetch("https://x.example/a");
        FAIL() << "expected HttpStatus";
    } catch (const HttpStatus& e) {
        EXPECT_EQ(404, e.code());
    }
    EXPECT_EQ(1, transport.calls());
}

TEST(Fetcher, ExhaustedTimeoutsRaiseTimeout) {
    ScriptedTransport transport;
    transport.script("https://x.example/a", {{0, "", true}});
    FetchPolicy policy = fast_policy();
    policy.max_retries = 2;
    Fetcher fetcher(policy, transport);
    EXPECT_THROW(fetcher.fetch("https://x.example/a"), Timeout);
    EXPECT_EQ(3, transport.calls());
}

TEST(FetchPolicy, ValidatesRanges) {
    EXPECT_THROW(fetch_policy_from_json({{"min_interval_ms", -1}}), std::invalid_argument);
    EXPECT_THROW(fetch_policy_from_json({{"max_retries", -1}}), std::invalid_argument);
    EXPECT_THROW(fetch_policy_from_json({{"timeout_ms", 0}}), std::invalid_argument);
    EXPECT_EQ(1000, fetch_policy_from_json(nlohmann::json::object()).min_interval_ms);
}

TEST(ParseUrl, SplitsComponents) {
    const auto url = parse_url("HTTPS://Dl.ACM.org/doi/10.1145/1?x=1");
    EXPECT_EQ("https", url.scheme);
    EXPECT_EQ("dl.acm.org", url.host);
    EXPECT_EQ(443, url.port);
    EXPECT_EQ("/doi/10.1145/1?x=1", url.target);
    EXPECT_EQ("/", parse_url("http://h.example").target);
    EXPECT_EQ(8080, parse_url("http://h.example:8080/").port);
    EXPECT_THROW(parse_url("ftp://h.example/"), InvalidUrl);
    EXPECT_THROW(parse_url("not a url"), InvalidUrl);
}

TEST(ExtractMetadata, AcmPageYieldsAllFields) {
    const auto profiles = ProfileSet::load_directory(kProfiles);
    const auto meta = extract_metadata(kAcmPage, "https://dl.acm.org/doi/10.1145/1", profiles);
    EXPECT_EQ("We present a system & evaluate it.", meta.abstract.value_or(""));
    ASSERT_TRUE(meta.keywords.has_value());
    EXPECT_EQ((std::vector<std::string>{"Visual analytics", "Sensemaking", "Text", "Documents", "Investigation"}),
              *meta.keywords);
    EXPECT_EQ(12, meta.citation_count.value_or(-1));
}

TEST(ExtractMetadata, MissingKeywordBlockIsAbsentNotEmpty) {
    const auto profiles = ProfileSet::load_directory(kProfiles);
    const std::string page =
        "<div class=\"abstractSection abstractInFull\"><p>Only an abstract here.</p></div>";
    const auto meta = extract_metadata(page, "https://dl.acm.org/doi/2", profiles);
    EXPECT_TRUE(meta.abstract.has_value());
    EXPECT_FALSE(meta.keywords.has_value());
    EXPECT_FALSE(meta.citation_count.has_value());
}

TEST(ExtractMetadata, RequiredFieldMissingFails) {
    const auto profiles = ProfileSet::load_directory(kProfiles);
    try {
        extract_metadata("<html></html>", "https://dl.acm.org/doi/3", profiles);
        FAIL() << "expected ExtractionFailed";
    } catch (const ExtractionFailed& e) {
        EXPECT_EQ("abstract", e.field());
    }
}

TEST(ExtractMetadata, UnconfiguredHost) {
    const auto profiles = ProfileSet::load_directory(kProfiles);
    try {
        extract_metadata(kAcmPage, "https://unknown.example/x", profiles);
        FAIL() << "expected UnknownPublisher";
    } catch (const UnknownPublisher& e) {
        EXPECT_EQ("unknown.example", e.host());
    }
}

TEST(ExtractMetadata, IsPure) {
    const auto profiles = ProfileSet::load_directory(kProfiles);
    const auto& acm = profiles.for_url("https://dl.acm.org/doi/1");
    EXPECT_EQ(acm.extract(kAcmPage), acm.extract(kAcmPage));
    EXPECT_EQ("acm", acm.name());
}

TEST(ExtractMetadata, SeparatorSplitKeywords) {
    const auto profile = PublisherProfile::from_json(nlohmann::json::parse(R"({
        "name": "plain", "hosts": ["plain.example"],
        "abstract": {"pattern": "<p id=\"a\">(.*?)</p>"},
        "keywords": {"block": "<p id=\"k\">(.*?)</p>", "separator": ";"}
    })"));
    const auto meta = profile.extract("<p id=\"a\">Abs</p><p id=\"k\">one; two ;three;</p>");
    EXPECT_EQ((std::vector<std::string>{"one", "two", "three"}), meta.keywords.value());
}

TEST(ExtractMetadata, InvalidProfileIsRejected) {
    EXPECT_THROW(PublisherProfile::from_json(nlohmann::json{{"name", "x"}}), InvalidProfile);
    EXPECT_THROW(PublisherProfile::from_json(nlohmann::json::parse(
                     R"({"name": "x", "hosts": ["h"], "abstract": {"pattern": "(unclosed"}})")),
                 InvalidProfile);
}

TEST(HtmlToText, StripsTagsAndDecodes) {
    EXPECT_EQ("a < b & c", html_to_text("<p>a &lt; b</p>\n  <b>&amp;</b> c"));
    EXPECT_EQ("caf\xC3\xA9", html_to_text("caf&#233;"));
}

std::vector<ingest::IdentifiedRecord> three_records() {
    std::vector<ingest::IdentifiedRecord> out(3);
    for (int i = 0; i < 3; ++i) {
        out[i].id = PaperId{i};
        out[i].record.dblp_key = "k" + std::to_string(i);
        out[i].record.url = "https://dl.acm.org/doi/" + std::to_string(i);
    }
    return out;
}

TEST(AugmentCorpus, OneFailingUrlLeavesMetadataAbsent) {
    test_support::TempDir dir;
    FixtureStore store(dir.path());
    store.put("https://dl.acm.org/doi/0", kAcmPage, 200, "2021-01-01T00:00:00Z");
    store.put("https://dl.acm.org/doi/2", kAcmPage, 200, "2021-01-01T00:00:00Z");
    FixtureTransport transport{FixtureStore(dir.path())};
    Fetcher fetcher(fast_policy(), transport);
    const auto profiles = ProfileSet::load_directory(kProfiles);
    const auto records = three_records();

    AugmentReport report;
    const auto out = augment_corpus(records, fetcher, profiles, report);
    ASSERT_EQ(3u, out.size());
    EXPECT_EQ(3u, report.processed);
    ASSERT_EQ(1u, report.failures.size());
    EXPECT_EQ(PaperId{1}, report.failures[0].id);
    EXPECT_EQ(PageMetadata{}, out[1].metadata);
    EXPECT_FALSE(out[1].fetched_at.has_value());
    EXPECT_TRUE(out[0].metadata.abstract.has_value());
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(records[i], out[i].base);
    }
}

TEST(AugmentCorpus, EmptyInput) {
    test_support::TempDir dir;
    FixtureTransport transport{FixtureStore(dir.path())};
    Fetcher fetcher(fast_policy(), transport);
    AugmentReport report;
    EXPECT_TRUE(augment_corpus({}, fetcher, ProfileSet{}, report).empty());
    EXPECT_EQ(0u, report.processed);
}

TEST(AugmentCorpus, ParallelRunMatchesSequentialBytes) {
    FixtureTransport transport{FixtureStore(test_support::fixture_dir() / "pipeline" / "pages")};
    const auto profiles = ProfileSet::load_directory(kProfiles);
    std::vector<ingest::IdentifiedRecord> records;
    for (int i = 0; i < 10; ++i) {
        ingest::IdentifiedRecord r;
        r.id = PaperId{i};
        r.record.dblp_key = "k" + std::to_string(i);
        r.record.url = "https://doi.org/10.1109/FIX.000" + std::to_string(i);
        records.push_back(r);
    }
    auto run = [&](std::size_t workers) {
        Fetcher fetcher(fast_policy(), transport);
        AugmentReport report;
        std::string bytes;
        for (const auto& r : augment_corpus(records, fetcher, profiles, report, workers)) {
            bytes += to_json(r).dump() + "\n";
        }
        return bytes;
    };
    const auto sequential = run(1);
    EXPECT_EQ(sequential, run(4));
    EXPECT_EQ(sequential, run(1));
}

TEST(AugmentedRecordJson, RoundTripKeepsAbsence) {
    AugmentedRecord r;
    r.base.id = PaperId{4};
    r.base.record.title = "T";
    r.metadata.abstract = "A";
    const auto j = to_json(r);
    EXPECT_TRUE(j.at("keywords").is_null());
    EXPECT_TRUE(j.at("citation_count").is_null());
    EXPECT_EQ(r, augmented_from_json(j));
}

}  // namespace
