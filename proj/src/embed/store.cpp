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

#include "litmap/embed/store.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "litmap/core/io.hpp"

namespace litmap::embed {
namespace {

constexpr char kMagic[8] = {'L', 'M', 'E', 'M', 'B', 'E', 'D', '1'};
constexpr std::uint32_t kDtypeFloat32 = 1;
constexpr std::size_t kTagSize = 16;
constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 8 + kTagSize;

template <typename T>
void put_le(std::string& out, T value) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>((static_cast<std::make_unsigned_t<T>>(value) >> (8 * i)) & 0xFF));
    }
}

template <typename T>
T get_le(const char* p) {
    std::make_unsigned_t<T> value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<std::make_unsigned_t<T>>(static_cast<unsigned char>(p[i])) << (8 * i);
    }
    return static_cast<T>(value);
}

}  // namespace

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::tfidf:
            return "tfidf";
        case Method::sif:
            return "sif";
        case Method::remote:
            return "remote";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::tfidf, Method::sif, Method::remote}) {
        if (method_name(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown embedding method: " + std::string(name));
}

void EmbeddingSet::add(PaperId id, std::span<const double> vector) {
    if (vector.size() != dims) {
        throw std::invalid_argument("embedding for id " + std::to_string(to_int(id)) + " has " +
                                    std::to_string(vector.size()) + " dims, expected " + std::to_string(dims));
    }
    for (double v : vector) {
        const auto f = static_cast<float>(v);
        if (!std::isfinite(f)) {
            throw std::invalid_argument("non-finite embedding value for id " + std::to_string(to_int(id)));
        }
    }
    ids.push_back(id);
    for (double v : vector) {
        data.push_back(static_cast<float>(v));
    }
}

void EmbeddingSet::add(PaperId id, std::span<const float> vector) {
    if (vector.size() != dims) {
        throw std::invalid_argument("embedding for id " + std::to_string(to_int(id)) + " has " +
                                    std::to_string(vector.size()) + " dims, expected " + std::to_string(dims));
    }
    for (float v : vector) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite embedding value for id " + std::to_string(to_int(id)));
        }
    }
    ids.push_back(id);
    data.insert(data.end(), vector.begin(), vector.end());
}

std::string serialize_embeddings(const EmbeddingSet& set) {
    if (set.data.size() != set.ids.size() * set.dims) {
        throw std::invalid_argument("embedding set data does not match ids x dims");
    }
    std::string out;
    out.reserve(kHeaderSize + set.size() * (8 + 4 * set.dims));
    out.append(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, kDtypeFloat32);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(set.dims));
    put_le<std::uint64_t>(out, set.size());
    std::string tag(method_name(set.method));
    tag.resize(kTagSize, '\0');
    out += tag;
    for (std::size_t i = 0; i < set.size(); ++i) {
        put_le<std::int64_t>(out, to_int(set.ids[i]));
        for (float v : set.row(i)) {
            put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
        }
    }
    return out;
}

EmbeddingSet deserialize_embeddings(std::string_view bytes) {
    if (bytes.size() < kHeaderSize) {
        throw CorruptHeader("embedding file shorter than its header");
    }
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw CorruptHeader("not an embedding file (bad magic)");
    }
    const auto dtype = get_le<std::uint32_t>(bytes.data() + 8);
    if (dtype != kDtypeFloat32) {
        throw CorruptHeader("unsupported dtype " + std::to_string(dtype));
    }
    EmbeddingSet set;
    set.dims = get_le<std::uint32_t>(bytes.data() + 12);
    const auto count = get_le<std::uint64_t>(bytes.data() + 16);
    const std::string_view tag_field = bytes.substr(24, kTagSize);
    const std::string_view tag = tag_field.substr(0, tag_field.find('\0'));
    try {
        set.method = parse_method(tag);
    } catch (const std::invalid_argument&) {
        throw CorruptHeader("unknown method tag '" + std::string(tag) + "'");
    }
    if (set.dims == 0 && count > 0) {
        throw CorruptHeader("zero dims with a non-zero count");
    }
    const std::size_t record = 8 + 4 * set.dims;
    const std::size_t body = bytes.size() - kHeaderSize;
    if (body % record != 0 || body / record != count) {
        throw CountMismatch(count, body / record);
    }
    set.ids.reserve(count);
    set.data.reserve(count * set.dims);
    const char* p = bytes.data() + kHeaderSize;
    for (std::uint64_t i = 0; i < count; ++i) {
        set.ids.push_back(PaperId{get_le<std::int64_t>(p)});
        p += 8;
        for (std::size_t d = 0; d < set.dims; ++d) {
            set.data.push_back(std::bit_cast<float>(get_le<std::uint32_t>(p)));
            p += 4;
        }
    }
    return set;
}

void store_embeddings(const std::filesystem::path& path, const EmbeddingSet& set) {
    write_file_atomic(path, serialize_embeddings(set));
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) { return deserialize_embeddings(read_file(path)); }

}  // namespace litmap::embed
