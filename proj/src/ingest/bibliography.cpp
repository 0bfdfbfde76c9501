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

#include "litmap/ingest/bibliography.hpp"

#include <expat.h>
#include <zlib.h>

#include <array>
#include <charconv>
#include <cstring>
#include <deque>
#include <fstream>

#include "litmap/core/io.hpp"

namespace litmap::ingest {
namespace {

constexpr std::size_t kChunkSize = 64 * 1024;

bool valid_entity_name(std::string_view name) {
    if (name.empty()) {
        return false;
    }
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    if (!alpha(name.front())) {
        return false;
    }
    for (char c : name) {
        if (!alpha(c) && !(c >= '0' && c <= '9') && c != '.' && c != '-') {
            return false;
        }
    }
    return true;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// The entity table becomes an external DTD subset that expat loads in place
// of whatever the document's DOCTYPE points at.
std::string build_dtd(const EntityTable& entities) {
    std::string dtd = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    for (const auto& [name, text] : entities) {
        dtd += "<!ENTITY " + name + " \"";
        for (char c : text) {
            switch (c) {
                case '&':
                    dtd += "&#38;";
                    break;
                case '%':
                    dtd += "&#37;";
                    break;
                case '"':
                    dtd += "&#34;";
                    break;
                case '<':
                    dtd += "&#60;";
                    break;
                default:
                    dtd.push_back(c);
            }
        }
        dtd += "\">\n";
    }
    return dtd;
}

void collapse_whitespace(std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending_space = !out.empty();
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(c);
        }
    }
    text = std::move(out);
}

enum class Field { none, title, author, journal, booktitle, year, ee, url };

Field field_for(std::string_view name) {
    if (name == "title") return Field::title;
    if (name == "author") return Field::author;
    if (name == "journal") return Field::journal;
    if (name == "booktitle") return Field::booktitle;
    if (name == "year") return Field::year;
    if (name == "ee") return Field::ee;
    if (name == "url") return Field::url;
    return Field::none;
}

bool accepted_kind(std::string_view kind) {
    return kind == "article" || kind == "inproceedings" || kind == "incollection";
}

struct Publication {
    std::string kind;
    std::string key;
    std::optional<std::string> title;
    std::vector<std::string> authors;
    std::optional<std::string> journal;
    std::optional<std::string> booktitle;
    std::optional<std::string> year;
    std::optional<std::string> ee;
};

ParseItem finish(Publication&& pub) {
    auto reject = [&](std::string reason) -> ParseItem {
        return Reject{std::move(pub.kind), std::move(pub.key), std::move(reason)};
    };
    if (!accepted_kind(pub.kind)) {
        return reject("non-article kind");
    }
    if (pub.key.empty()) {
        return reject("missing key");
    }
    if (!pub.title || pub.title->empty()) {
        return reject("missing title");
    }
    std::optional<std::string>& venue = pub.kind == "article" ? pub.journal : pub.booktitle;
    if (!venue || venue->empty()) {
        return reject("missing venue");
    }
    if (!pub.year || pub.year->empty()) {
        return reject("missing year");
    }
    int year = 0;
    const auto* begin = pub.year->data();
    const auto* end = begin + pub.year->size();
    auto [ptr, ec] = std::from_chars(begin, end, year);
    if (ec != std::errc{} || ptr != end || year <= 0) {
        return reject("invalid year");
    }
    RawPublicationRecord record;
    record.dblp_key = std::move(pub.key);
    record.title = std::move(*pub.title);
    record.authors = std::move(pub.authors);
    record.source = std::move(*venue);
    record.year = year;
    record.url = pub.ee.value_or(std::string{});
    return record;
}

}  // namespace

MalformedXml::MalformedXml(const std::string& detail, std::uint64_t line, std::uint64_t column,
                           std::int64_t byte_offset, std::size_t records, std::size_t rejects)
    : ParseError("malformed XML at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + detail + " (" + std::to_string(records) +
                     " records emitted)",
                 records, rejects),
      line_(line),
      column_(column),
      byte_offset_(byte_offset) {}

UnresolvableEntity::UnresolvableEntity(std::string name, std::size_t records, std::size_t rejects)
    : ParseError("unresolvable entity &" + name + "; (" + std::to_string(records) +
                     " records emitted)",
                 records, rejects),
      name_(std::move(name)) {}

EntityTable parse_entity_table(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw Error("entity table must be a JSON object");
    }
    EntityTable table;
    for (const auto& [name, value] : doc.items()) {
        if (!valid_entity_name(name)) {
            throw Error("invalid entity name: " + name);
        }
        std::string text;
        if (value.is_number_unsigned() || value.is_number_integer()) {
            const auto cp = value.get<std::int64_t>();
            if (cp <= 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
                throw Error("invalid codepoint for entity " + name);
            }
            append_utf8(text, static_cast<char32_t>(cp));
        } else if (value.is_string()) {
            text = value.get<std::string>();
        } else {
            throw Error("entity " + name + " must map to a codepoint or a string");
        }
        table.emplace(name, std::move(text));
    }
    return table;
}

EntityTable load_entity_table(const std::filesystem::path& path) {
    try {
        return parse_entity_table(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("entity table " + path.string() + ": " + e.what());
    }
}

std::size_t StreamByteSource::read(char* buffer, std::size_t size) {
    in_.read(buffer, static_cast<std::streamsize>(size));
    return static_cast<std::size_t>(in_.gcount());
}

namespace {

class GzipFileSource final : public ByteSource {
   public:
    explicit GzipFileSource(const std::filesystem::path& path)
        : file_(gzopen(path.c_str(), "rb")) {
        if (file_ == nullptr) {
            throw IoError("cannot open " + path.string());
        }
        gzbuffer(file_, 256 * 1024);
    }
    ~GzipFileSource() override { gzclose(file_); }
    GzipFileSource(const GzipFileSource&) = delete;
    GzipFileSource& operator=(const GzipFileSource&) = delete;

    std::size_t read(char* buffer, std::size_t size) override {
        const int n = gzread(file_, buffer, static_cast<unsigned>(size));
        if (n < 0) {
            int code = 0;
            throw IoError(std::string("gzip read failed: ") + gzerror(file_, &code));
        }
        return static_cast<std::size_t>(n);
    }

   private:
    gzFile file_;
};

}  // namespace

std::unique_ptr<ByteSource> open_byte_source(const std::filesystem::path& path) {
    return std::make_unique<GzipFileSource>(path);
}

struct BibliographyReader::State {
    std::unique_ptr<ByteSource> source;
    std::string dtd;
    XML_Parser parser = nullptr;

    std::deque<ParseItem> ready;
    std::size_t records = 0;
    std::size_t rejects = 0;
    bool finished = false;

    int depth = 0;
    std::optional<Publication> current;
    Field field = Field::none;
    int field_depth = 0;
    std::string text;

    std::optional<std::string> unresolved_entity;
    std::optional<std::string> handler_error;

    ~State() {
        if (parser != nullptr) {
            XML_ParserFree(parser);
        }
    }

    static void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
        auto& s = *static_cast<State*>(user);
        ++s.depth;
        if (s.depth == 2) {
            Publication pub;
            pub.kind = name;
            for (const XML_Char** a = attrs; *a != nullptr; a += 2) {
                if (std::strcmp(a[0], "key") == 0) {
                    pub.key = a[1];
                }
            }
            s.current = std::move(pub);
        } else if (s.depth == 3 && s.current) {
            s.field = field_for(name);
            s.field_depth = s.depth;
            s.text.clear();
        }
    }

    static void XMLCALL on_end(void* user, const XML_Char* /*name*/) {
        auto& s = *static_cast<State*>(user);
        if (s.depth == 3 && s.current && s.field != Field::none) {
            collapse_whitespace(s.text);
            auto& pub = *s.current;
            switch (s.field) {
                case Field::title:
                    if (!pub.title) pub.title = std::move(s.text);
                    break;
                case Field::author:
                    if (!s.text.empty()) pub.authors.push_back(std::move(s.text));
                    break;
                case Field::journal:
                    if (!pub.journal) pub.journal = std::move(s.text);
                    break;
                case Field::booktitle:
                    if (!pub.booktitle) pub.booktitle = std::move(s.text);
                    break;
                case Field::year:
                    if (!pub.year) pub.year = std::move(s.text);
                    break;
                case Field::ee:
                    if (!pub.ee) pub.ee = std::move(s.text);
                    break;
                case Field::url:
                case Field::none:
                    break;
            }
            s.field = Field::none;
            s.text.clear();
        } else if (s.depth == 2 && s.current) {
            ParseItem item = finish(std::move(*s.current));
            s.current.reset();
            if (std::holds_alternative<RawPublicationRecord>(item)) {
                ++s.records;
            } else {
                ++s.rejects;
            }
            s.ready.push_back(std::move(item));
        }
        --s.depth;
    }

    static void XMLCALL on_text(void* user, const XML_Char* data, int len) {
        auto& s = *static_cast<State*>(user);
        if (s.field != Field::none && s.depth >= s.field_depth) {
            s.text.append(data, static_cast<std::size_t>(len));
        }
    }

    static void XMLCALL on_skipped_entity(void* user, const XML_Char* name, int is_parameter) {
        auto& s = *static_cast<State*>(user);
        if (is_parameter) {
            return;
        }
        s.unresolved_entity = name;
        XML_StopParser(s.parser, XML_FALSE);
    }

    static int XMLCALL on_external_entity(XML_Parser parser, const XML_Char* context,
                                          const XML_Char* /*base*/, const XML_Char* /*system_id*/,
                                          const XML_Char* /*public_id*/) {
        auto& s = *static_cast<State*>(XML_GetUserData(parser));
        XML_Parser dtd_parser = XML_ExternalEntityParserCreate(parser, context, nullptr);
        if (dtd_parser == nullptr) {
            s.handler_error = "cannot create DTD parser";
            return XML_STATUS_ERROR;
        }
        const auto status = XML_Parse(dtd_parser, s.dtd.data(), static_cast<int>(s.dtd.size()), XML_TRUE);
        if (status != XML_STATUS_OK) {
            s.handler_error = std::string("entity table: ") + XML_ErrorString(XML_GetErrorCode(dtd_parser));
        }
        XML_ParserFree(dtd_parser);
        return status == XML_STATUS_OK ? XML_STATUS_OK : XML_STATUS_ERROR;
    }

    [[noreturn]] void raise() {
        if (unresolved_entity) {
            throw UnresolvableEntity(*unresolved_entity, records, rejects);
        }
        std::string detail = handler_error ? *handler_error : XML_ErrorString(XML_GetErrorCode(parser));
        throw MalformedXml(detail, XML_GetCurrentLineNumber(parser), XML_GetCurrentColumnNumber(parser),
                           XML_GetCurrentByteIndex(parser), records, rejects);
    }

    void pump() {
        void* buffer = XML_GetBuffer(parser, static_cast<int>(kChunkSize));
        if (buffer == nullptr) {
            throw Error("XML parser out of memory");
        }
        const std::size_t n = source->read(static_cast<char*>(buffer), kChunkSize);
        const bool last = n == 0;
        if (XML_ParseBuffer(parser, static_cast<int>(n), last ? XML_TRUE : XML_FALSE) != XML_STATUS_OK) {
            raise();
        }
        if (last) {
            finished = true;
        }
    }
};

BibliographyReader::BibliographyReader(std::unique_ptr<ByteSource> source, EntityTable entities)
    : state_(std::make_unique<State>()) {
    state_->source = std::move(source);
    state_->dtd = build_dtd(entities);
    state_->parser = XML_ParserCreate("UTF-8");
    if (state_->parser == nullptr) {
        throw Error("cannot create XML parser");
    }
    XML_Parser p = state_->parser;
    XML_SetUserData(p, state_.get());
    XML_SetElementHandler(p, &State::on_start, &State::on_end);
    XML_SetCharacterDataHandler(p, &State::on_text);
    XML_SetSkippedEntityHandler(p, &State::on_skipped_entity);
    XML_SetExternalEntityRefHandler(p, &State::on_external_entity);
    XML_SetParamEntityParsing(p, XML_PARAM_ENTITY_PARSING_ALWAYS);
    XML_UseForeignDTD(p, XML_TRUE);
}

BibliographyReader::~BibliographyReader() = default;

std::optional<ParseItem> BibliographyReader::next() {
    auto& s = *state_;
    while (s.ready.empty() && !s.finished) {
        s.pump();
    }
    if (s.ready.empty()) {
        return std::nullopt;
    }
    ParseItem item = std::move(s.ready.front());
    s.ready.pop_front();
    return item;
}

std::size_t BibliographyReader::records_emitted() const noexcept { return state_->records; }
std::size_t BibliographyReader::rejects_emitted() const noexcept { return state_->rejects; }

ParseStats parse_bibliography(std::unique_ptr<ByteSource> source, const EntityTable& entities,
                              const std::function<void(RawPublicationRecord&&)>& on_record,
                              const std::function<void(Reject&&)>& on_reject) {
    BibliographyReader reader(std::move(source), entities);
    ParseStats stats;
    while (auto item = reader.next()) {
        if (auto* record = std::get_if<RawPublicationRecord>(&*item)) {
            ++stats.records;
            on_record(std::move(*record));
        } else {
            ++stats.rejects;
            on_reject(std::get<Reject>(std::move(*item)));
        }
    }
    return stats;
}

nlohmann::json to_json(const Reject& reject) {
    return {{"kind", reject.kind}, {"dblp_key", reject.dblp_key}, {"reason", reject.reason}};
}

}  // namespace litmap::ingest
