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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "litmap/core/types.hpp"

namespace litmap::ingest {

/// One publication as read from the bibliography, before any augmentation.
struct RawPublicationRecord {
    std::string dblp_key;
    std::string title;
    std::vector<std::string> authors;  // input order, DBLP suffixes such as "0001" kept
    std::string source;
    int year = 0;
    std::string url;

    bool operator==(const RawPublicationRecord&) const = default;
};

/// A publication element that could not become a record.
struct Reject {
    std::string kind;  // element name, e.g. "www"
    std::string dblp_key;
    std::string reason;

    bool operator==(const Reject&) const = default;
};

using ParseItem = std::variant<RawPublicationRecord, Reject>;

/// Entity name -> UTF-8 replacement text.
using EntityTable = std::map<std::string, std::string>;

/// Reads {"name": codepoint | "text", ...}.
EntityTable parse_entity_table(const nlohmann::json& doc);
EntityTable load_entity_table(const std::filesystem::path& path);

/// Aborts a parse; carries how many items were produced before the failure.
class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t records_emitted, std::size_t rejects_emitted)
        : Error(what), records_emitted_(records_emitted), rejects_emitted_(rejects_emitted) {}

    std::size_t records_emitted() const noexcept { return records_emitted_; }
    std::size_t rejects_emitted() const noexcept { return rejects_emitted_; }

   private:
    std::size_t records_emitted_;
    std::size_t rejects_emitted_;
};

class MalformedXml : public ParseError {
   public:
    MalformedXml(const std::string& detail, std::uint64_t line, std::uint64_t column,
                 std::int64_t byte_offset, std::size_t records, std::size_t rejects);

    std::uint64_t line() const noexcept { return line_; }
    std::uint64_t column() const noexcept { return column_; }
    std::int64_t byte_offset() const noexcept { return byte_offset_; }

   private:
    std::uint64_t line_;
    std::uint64_t column_;
    std::int64_t byte_offset_;
};

class UnresolvableEntity : public ParseError {
   public:
    UnresolvableEntity(std::string name, std::size_t records, std::size_t rejects);

    const std::string& name() const noexcept { return name_; }

   private:
    std::string name_;
};

/// Pull source of raw bytes.
class ByteSource {
   public:
    virtual ~ByteSource() = default;
    /// Fills up to `size` bytes; returns 0 at end of input.
    virtual std::size_t read(char* buffer, std::size_t size) = 0;
};

class StreamByteSource final : public ByteSource {
   public:
    explicit StreamByteSource(std::istream& in) : in_(in) {}
    std::size_t read(char* buffer, std::size_t size) override;

   private:
    std::istream& in_;
};

/// Opens a file that may be gzip-compressed or plain.
std::unique_ptr<ByteSource> open_byte_source(const std::filesystem::path& path);

/// Streaming reader over a DBLP-format XML document. Items come out in
/// document order; memory use does not grow with the number of records.
///
/// Accepted element kinds are article, inproceedings and incollection. Any
/// other child of the root becomes a Reject with reason "non-article kind".
class BibliographyReader {
   public:
    BibliographyReader(std::unique_ptr<ByteSource> source, EntityTable entities);
    ~BibliographyReader();
    BibliographyReader(const BibliographyReader&) = delete;
    BibliographyReader& operator=(const BibliographyReader&) = delete;

    /// The next record or reject, or nullopt once the document is consumed.
    /// Throws MalformedXml or UnresolvableEntity.
    std::optional<ParseItem> next();

    std::size_t records_emitted() const noexcept;
    std::size_t rejects_emitted() const noexcept;

   private:
    struct State;
    std::unique_ptr<State> state_;
};

struct ParseStats {
    std::size_t records = 0;
    std::size_t rejects = 0;
};

ParseStats parse_bibliography(std::unique_ptr<ByteSource> source, const EntityTable& entities,
                              const std::function<void(RawPublicationRecord&&)>& on_record,
                              const std::function<void(Reject&&)>& on_reject);

nlohmann::json to_json(const Reject& reject);

}  // namespace litmap::ingest
