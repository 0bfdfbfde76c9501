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
#include <random>
#include <string>
#include <vector>

#include "litmap/core/types.hpp"

namespace litmap::test_support {

inline std::filesystem::path fixture_dir() { return LITMAP_FIXTURE_DIR; }

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
   public:
    explicit TempDir(const std::string& tag = "litmap") {
        std::random_device rd;
        const auto base = std::filesystem::temp_directory_path();
        for (;;) {
            path_ = base / (tag + "-" + std::to_string(rd()));
            if (std::filesystem::create_directory(path_)) {
                break;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

   private:
    std::filesystem::path path_;
};

/// Copies the offline pipeline fixture into `dest`.
inline void copy_pipeline_fixture(const std::filesystem::path& dest) {
    std::filesystem::copy(fixture_dir() / "pipeline", dest,
                          std::filesystem::copy_options::recursive | std::filesystem::copy_options::overwrite_existing);
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dims, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(dims);
    for (auto& x : v) {
        x = dist(rng);
    }
    return v;
}

inline std::vector<PaperId> sequential_ids(std::size_t n, std::int64_t first = 0) {
    std::vector<PaperId> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = PaperId{first + static_cast<std::int64_t>(i)};
    }
    return ids;
}

}  // namespace litmap::test_support
