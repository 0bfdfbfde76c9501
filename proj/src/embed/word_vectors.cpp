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

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>

#include "litmap/embed/text.hpp"

namespace litmap::embed {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

bool is_integer(std::string_view s) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

}  // namespace

WordVectorTable::WordVectorTable(std::size_t dims) : dims_(dims) {
    if (dims == 0) {
        throw WordVectorError("word vectors need dims > 0");
    }
}

void WordVectorTable::add(std::string_view token, std::span<const double> values) {
    if (values.size() != dims_) {
        throw WordVectorError("word vector for '" + std::string(token) + "' has " + std::to_string(values.size()) +
                              " values, expected " + std::to_string(dims_));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw WordVectorError("non-finite value in word vector for '" + std::string(token) + "'");
        }
    }
    auto [it, inserted] = index_.emplace(lowercase(token), index_.size());
    if (!inserted) {
        return;
    }
    data_.insert(data_.end(), values.begin(), values.end());
}

std::span<const float> WordVectorTable::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) {
        return {};
    }
    return std::span<const float>(data_.data() + it->second * dims_, dims_);
}

WordVectorTable WordVectorTable::load_text(const std::filesystem::path& path,
                                           const std::unordered_set<std::string>* vocabulary) {
    std::ifstream in(path);
    if (!in) {
        throw WordVectorError("cannot open word vectors " + path.string());
    }
    std::optional<WordVectorTable> table;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (fields.empty()) {
            continue;
        }
        if (line_no == 1 && fields.size() == 2 && is_integer(fields[0]) && is_integer(fields[1])) {
            continue;
        }
        if (fields.size() < 2) {
            throw WordVectorError(path.string() + ":" + std::to_string(line_no) + ": no vector values");
        }
        if (!table) {
            table.emplace(fields.size() - 1);
        }
        if (fields.size() - 1 != table->dims()) {
            throw WordVectorError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(table->dims()) + " values");
        }
        const std::string token = lowercase(fields[0]);
        if (vocabulary != nullptr && !vocabulary->contains(token)) {
            continue;
        }
        values.clear();
        for (std::size_t k = 1; k < fields.size(); ++k) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(fields[k].data(), fields[k].data() + fields[k].size(), v);
            if (ec != std::errc{} || ptr != fields[k].data() + fields[k].size()) {
                throw WordVectorError(path.string() + ":" + std::to_string(line_no) + ": bad number '" +
                                      std::string(fields[k]) + "'");
            }
            values.push_back(v);
        }
        try {
            table->add(token, values);
        } catch (const WordVectorError& e) {
            throw WordVectorError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!table) {
        throw WordVectorError("no word vectors in " + path.string());
    }
    return std::move(*table);
}

}  // namespace litmap::embed
