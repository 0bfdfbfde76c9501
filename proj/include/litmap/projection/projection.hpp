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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "litmap/core/types.hpp"
#include "litmap/embed/store.hpp"

namespace litmap::projection {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

enum class Provenance { external, pca };

/// One (x, y) pair per paper, aligned with `ids`.
struct PlanarCoordinates {
    Provenance provenance = Provenance::external;
    std::vector<PaperId> ids;
    std::vector<Point> points;
    /// Rows of the source file that named papers outside the corpus.
    std::size_t extra_ids = 0;
    /// PCA only: the data had rank < 2 and y is all zeros.
    bool degenerate = false;

    std::size_t size() const noexcept { return ids.size(); }
    std::optional<Point> find(PaperId id) const;
};

class MissingIds : public Error {
   public:
    explicit MissingIds(std::vector<PaperId> ids);
    const std::vector<PaperId>& ids() const noexcept { return ids_; }

   private:
    std::vector<PaperId> ids_;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string& detail)
        : Error("projection line " + std::to_string(line) + ": " + detail), line_(line) {}
    /// 1-based; for JSON input, the 1-based array element.
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

class DegenerateRank : public Error {
   public:
    using Error::Error;
};

/// Reads CSV ("paper_id,x,y" header, one row per paper) or a JSON array of
/// {"paper_id", "x", "y"} objects. The result follows the order of
/// `corpus_ids`. Rows for unknown ids are counted in `extra_ids`.
PlanarCoordinates load_projection(const std::filesystem::path& path, std::span<const PaperId> corpus_ids);
PlanarCoordinates parse_projection(std::string_view text, std::span<const PaperId> corpus_ids);

/// CSV with shortest round-trip number formatting.
std::string format_projection_csv(const PlanarCoordinates& coords);
void write_projection(const std::filesystem::path& path, const PlanarCoordinates& coords);

/// Row-major double matrix.
struct MatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

struct PcaOptions {
    /// Throw DegenerateRank instead of falling back to rank 1.
    bool strict = false;
};

/// Mean-centers the rows and projects them onto the top two principal
/// directions. Axis 1 carries at least the variance of axis 2. Each axis is
/// signed so that its largest-magnitude loading is positive (first index on
/// ties). When the second eigenvalue is not above 1e-12 of the first the
/// result is rank 1 on x and zero on y; when the data has no variance at all
/// every point is (0, 0). Both cases set `degenerate`.
///
/// Throws std::invalid_argument for fewer than 3 rows or fewer than 2 columns.
PlanarCoordinates pca_project_2d(std::span<const PaperId> ids, MatrixView matrix, PcaOptions options = {});
PlanarCoordinates pca_project_2d(const embed::EmbeddingSet& embeddings, PcaOptions options = {});

}  // namespace litmap::projection
