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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/core/types.hpp"

namespace litmap::augment {

struct PageMetadata {
    std::optional<std::string> abstract;
    std::optional<std::vector<std::string>> keywords;
    std::optional<std::int64_t> citation_count;

    bool operator==(const PageMetadata&) const = default;
};

class UnknownPublisher : public Error {
   public:
    explicit UnknownPublisher(std::string host)
        : Error("no publisher profile for host " + host), host_(std::move(host)) {}
    const std::string& host() const noexcept { return host_; }

   private:
    std::string host_;
};

class ExtractionFailed : public Error {
   public:
    explicit ExtractionFailed(std::string field)
        : Error("required field not found: " + field), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

   private:
    std::string field_;
};

class InvalidProfile : public Error {
   public:
    using Error::Error;
};

/// Declarative extraction rules for one publisher's pages. Patterns are
/// Perl-syntax regular expressions; capture group 1 is the value.
///
/// Profile JSON:
///   {"name": "acm", "hosts": ["dl.acm.org"], "ignore_case": true,
///    "abstract":       {"pattern": "...", "required": true},
///    "keywords":       {"block": "...", "item": "...", "required": false},
///    "citation_count": {"pattern": "..."}}
///
/// For keywords, "block" locates the keyword region and "item" is applied
/// repeatedly inside it; without "item" the block is split on "separator".
class PublisherProfile {
   public:
    static PublisherProfile from_json(const nlohmann::json& doc);

    PublisherProfile(const PublisherProfile&);
    PublisherProfile(PublisherProfile&&) noexcept;
    PublisherProfile& operator=(const PublisherProfile&) = delete;
    PublisherProfile& operator=(PublisherProfile&&) = delete;
    ~PublisherProfile();

    const std::string& name() const noexcept;
    const std::vector<std::string>& hosts() const noexcept;
    bool serves(std::string_view host) const;

    /// Pure: the same bytes always give the same metadata.
    PageMetadata extract(std::string_view html) const;

   private:
    struct Rules;
    explicit PublisherProfile(std::unique_ptr<Rules> rules);
    std::unique_ptr<Rules> rules_;
};

/// Profiles chosen by URL host.
class ProfileSet {
   public:
    ProfileSet() = default;

    /// Loads every *.json file in `dir`, in filename order.
    static ProfileSet load_directory(const std::filesystem::path& dir);

    void add(PublisherProfile profile);

    /// Throws UnknownPublisher.
    const PublisherProfile& for_url(std::string_view url) const;

    std::size_t size() const noexcept { return profiles_.size(); }

   private:
    std::vector<PublisherProfile> profiles_;
};

PageMetadata extract_metadata(std::string_view html, const PublisherProfile& profile);
PageMetadata extract_metadata(std::string_view html, std::string_view url, const ProfileSet& profiles);

/// Strips tags, decodes character references and collapses whitespace.
std::string html_to_text(std::string_view html);

}  // namespace litmap::augment
