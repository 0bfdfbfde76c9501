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

#include "litmap/augment/extract.hpp"

#include <algorithm>
#include <charconv>

#include <boost/regex.hpp>

#include "litmap/augment/fetch.hpp"
#include "litmap/core/io.hpp"

namespace litmap::augment {
namespace {

void append_utf8(std::string& out, unsigned long cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return;
    }
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

struct NamedRef {
    std::string_view name;
    unsigned long cp;
};

constexpr NamedRef kNamedRefs[] = {
    {"amp", '&'},     {"lt", '<'},       {"gt", '>'},       {"quot", '"'},     {"apos", '\''},
    {"nbsp", 0xA0},   {"ndash", 0x2013}, {"mdash", 0x2014}, {"lsquo", 0x2018}, {"rsquo", 0x2019},
    {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"hellip", 0x2026},
};

std::optional<std::string> clean_capture(std::string_view raw) {
    std::string text = html_to_text(raw);
    if (text.empty()) {
        return std::nullopt;
    }
    return text;
}

template <typename Sub>
std::string_view slice(std::string_view base, const Sub& sub) {
    return base.substr(static_cast<std::size_t>(sub.first - base.begin()), static_cast<std::size_t>(sub.length()));
}

boost::regex compile(const nlohmann::json& node, const char* key, bool icase, const std::string& where) {
    boost::regex::flag_type flags = boost::regex::perl;
    if (icase) {
        flags |= boost::regex::icase;
    }
    const auto pattern = node.at(key).get<std::string>();
    try {
        return boost::regex(pattern, flags);
    } catch (const boost::regex_error& e) {
        throw InvalidProfile(where + "." + key + ": " + e.what());
    }
}

}  // namespace

std::string html_to_text(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    bool pending_space = false;
    auto emit = [&](std::string_view piece) {
        for (char c : piece) {
            const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
            if (space) {
                pending_space = !out.empty();
                continue;
            }
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(c);
        }
    };
    std::size_t i = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (c == '<') {
            const auto close = html.find('>', i);
            if (close == std::string_view::npos) {
                break;
            }
            pending_space = pending_space || !out.empty();
            i = close + 1;
            continue;
        }
        if (c == '&') {
            const auto semi = html.find(';', i);
            if (semi != std::string_view::npos && semi - i <= 10) {
                const std::string_view ref = html.substr(i + 1, semi - i - 1);
                std::string decoded;
                if (!ref.empty() && ref.front() == '#') {
                    unsigned long cp = 0;
                    const bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
                    const auto digits = ref.substr(hex ? 2 : 1);
                    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
                    if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
                        append_utf8(decoded, cp);
                        emit(cp == 0xA0 ? std::string_view(" ") : std::string_view(decoded));
                        i = semi + 1;
                        continue;
                    }
                } else {
                    const auto* it = std::find_if(std::begin(kNamedRefs), std::end(kNamedRefs),
                                                  [&](const NamedRef& r) { return r.name == ref; });
                    if (it != std::end(kNamedRefs)) {
                        append_utf8(decoded, it->cp);
                        emit(it->cp == 0xA0 ? std::string_view(" ") : std::string_view(decoded));
                        i = semi + 1;
                        continue;
                    }
                }
            }
        }
        emit(html.substr(i, 1));
        ++i;
    }
    return out;
}

struct PublisherProfile::Rules {
    std::string name;
    std::vector<std::string> hosts;
    std::optional<boost::regex> abstract;
    bool abstract_required = false;
    std::optional<boost::regex> keyword_block;
    std::optional<boost::regex> keyword_item;
    std::string keyword_separator = ",";
    bool keywords_required = false;
    std::optional<boost::regex> citations;
    bool citations_required = false;
};

PublisherProfile::PublisherProfile(std::unique_ptr<Rules> rules) : rules_(std::move(rules)) {}
PublisherProfile::PublisherProfile(const PublisherProfile& other)
    : rules_(std::make_unique<Rules>(*other.rules_)) {}
PublisherProfile::PublisherProfile(PublisherProfile&&) noexcept = default;
PublisherProfile::~PublisherProfile() = default;

const std::string& PublisherProfile::name() const noexcept { return rules_->name; }
const std::vector<std::string>& PublisherProfile::hosts() const noexcept { return rules_->hosts; }

bool PublisherProfile::serves(std::string_view host) const {
    for (const auto& h : rules_->hosts) {
        if (host == h) {
            return true;
        }
        if (host.size() > h.size() && host.ends_with(h) && host[host.size() - h.size() - 1] == '.') {
            return true;
        }
    }
    return false;
}

PublisherProfile PublisherProfile::from_json(const nlohmann::json& doc) {
    auto rules = std::make_unique<Rules>();
    try {
        rules->name = doc.at("name").get<std::string>();
        rules->hosts = doc.at("hosts").get<std::vector<std::string>>();
        for (auto& h : rules->hosts) {
            std::transform(h.begin(), h.end(), h.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        }
        const bool icase = doc.value("ignore_case", false);
        const std::string where = "profile " + rules->name;
        if (auto it = doc.find("abstract"); it != doc.end()) {
            rules->abstract = compile(*it, "pattern", icase, where + ".abstract");
            rules->abstract_required = it->value("required", false);
        }
        if (auto it = doc.find("keywords"); it != doc.end()) {
            rules->keyword_block = compile(*it, "block", icase, where + ".keywords");
            if (it->contains("item")) {
                rules->keyword_item = compile(*it, "item", icase, where + ".keywords");
            }
            rules->keyword_separator = it->value("separator", rules->keyword_separator);
            rules->keywords_required = it->value("required", false);
        }
        if (auto it = doc.find("citation_count"); it != doc.end()) {
            rules->citations = compile(*it, "pattern", icase, where + ".citation_count");
            rules->citations_required = it->value("required", false);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidProfile(std::string("publisher profile: ") + e.what());
    }
    if (rules->hosts.empty()) {
        throw InvalidProfile("publisher profile " + rules->name + " lists no hosts");
    }
    return PublisherProfile(std::move(rules));
}

PageMetadata PublisherProfile::extract(std::string_view html) const {
    const auto& r = *rules_;
    PageMetadata meta;
    boost::match_results<std::string_view::const_iterator> m;

    if (r.abstract && boost::regex_search(html.begin(), html.end(), m, *r.abstract) && m.size() > 1) {
        meta.abstract = clean_capture(slice(html, m[1]));
    }
    if (!meta.abstract && r.abstract_required) {
        throw ExtractionFailed("abstract");
    }

    if (r.keyword_block && boost::regex_search(html.begin(), html.end(), m, *r.keyword_block) && m.size() > 1) {
        const std::string_view block = slice(html, m[1]);
        std::vector<std::string> keywords;
        if (r.keyword_item) {
            boost::regex_iterator<std::string_view::const_iterator> it(block.begin(), block.end(), *r.keyword_item);
            for (; it != decltype(it){}; ++it) {
                const auto& sub = (*it)[1];
                if (auto text = clean_capture(slice(block, sub))) {
                    keywords.push_back(std::move(*text));
                }
            }
        } else {
            const std::string text = html_to_text(block);
            std::size_t start = 0;
            while (start <= text.size()) {
                auto end = text.find(r.keyword_separator, start);
                if (end == std::string::npos) {
                    end = text.size();
                }
                if (auto piece = clean_capture(std::string_view(text).substr(start, end - start))) {
                    keywords.push_back(std::move(*piece));
                }
                start = end + r.keyword_separator.size();
            }
        }
        if (!keywords.empty()) {
            meta.keywords = std::move(keywords);
        }
    }
    if (!meta.keywords && r.keywords_required) {
        throw ExtractionFailed("keywords");
    }

    if (r.citations && boost::regex_search(html.begin(), html.end(), m, *r.citations) && m.size() > 1) {
        std::string digits;
        for (auto it = m[1].first; it != m[1].second; ++it) {
            if (*it >= '0' && *it <= '9') {
                digits.push_back(*it);
            }
        }
        std::int64_t count = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
        if (!digits.empty() && ec == std::errc{} && ptr == digits.data() + digits.size()) {
            meta.citation_count = count;
        }
    }
    if (!meta.citation_count && r.citations_required) {
        throw ExtractionFailed("citation_count");
    }
    return meta;
}

ProfileSet ProfileSet::load_directory(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    ProfileSet set;
    for (const auto& file : files) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(file));
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidProfile(file.string() + ": " + e.what());
        }
        set.add(PublisherProfile::from_json(doc));
    }
    return set;
}

void ProfileSet::add(PublisherProfile profile) { profiles_.push_back(std::move(profile)); }

const PublisherProfile& ProfileSet::for_url(std::string_view url) const {
    std::string host;
    try {
        host = parse_url(url).host;
    } catch (const InvalidUrl&) {
        throw UnknownPublisher(std::string(url));
    }
    for (const auto& p : profiles_) {
        if (p.serves(host)) {
            return p;
        }
    }
    throw UnknownPublisher(host);
}

PageMetadata extract_metadata(std::string_view html, const PublisherProfile& profile) {
    return profile.extract(html);
}

PageMetadata extract_metadata(std::string_view html, std::string_view url, const ProfileSet& profiles) {
    return profiles.for_url(url).extract(html);
}

}  // namespace litmap::augment
