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

#include "litmap/projection/projection.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "litmap/core/io.hpp"

namespace litmap::projection {
namespace {

std::string describe_ids(const std::vector<PaperId>& ids) {
    std::string text = std::to_string(ids.size()) + " corpus ids missing from projection:";
    const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        text += ' ';
        text += std::to_string(to_int(ids[i]));
    }
    if (shown < ids.size()) {
        text += " ...";
    }
    return text;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

struct Row {
    std::int64_t id;
    Point point;
    std::size_t line;
};

std::vector<Row> parse_csv(std::string_view text) {
    std::vector<Row> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            std::string compact;
            for (char c : line) {
                if (c != ' ' && c != '\t') {
                    compact += c;
                }
            }
            if (compact != "paper_id,x,y") {
                throw ParseError(line_no, "expected header 'paper_id,x,y'");
            }
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError(line_no, "expected 3 fields");
        }
        Row row{0, {}, line_no};
        if (!parse_number(line.substr(0, c1), row.id)) {
            throw ParseError(line_no, "bad paper_id");
        }
        if (!parse_number(line.substr(c1 + 1, c2 - c1 - 1), row.point.x) ||
            !parse_number(line.substr(c2 + 1), row.point.y)) {
            throw ParseError(line_no, "bad coordinate");
        }
        rows.push_back(row);
    }
    if (!header_seen) {
        throw ParseError(1, "empty projection file");
    }
    return rows;
}

std::vector<Row> parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n')) + 1;
        throw ParseError(line, e.what());
    }
    if (!doc.is_array()) {
        throw ParseError(1, "expected a JSON array");
    }
    std::vector<Row> rows;
    rows.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.is_object() || !item.contains("paper_id") || !item.contains("x") || !item.contains("y") ||
            !item["paper_id"].is_number_integer() || !item["x"].is_number() || !item["y"].is_number()) {
            throw ParseError(i + 1, "expected {paper_id: integer, x: number, y: number}");
        }
        rows.push_back({item["paper_id"].get<std::int64_t>(), {item["x"].get<double>(), item["y"].get<double>()}, i + 1});
    }
    return rows;
}

void format_double(std::string& out, double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

MissingIds::MissingIds(std::vector<PaperId> ids) : Error(describe_ids(ids)), ids_(std::move(ids)) {}

std::optional<Point> PlanarCoordinates::find(PaperId id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == id) {
            return points[i];
        }
    }
    return std::nullopt;
}

PlanarCoordinates parse_projection(std::string_view text, std::span<const PaperId> corpus_ids) {
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool is_json = first != std::string_view::npos && text[first] == '[';
    const std::vector<Row> rows = is_json ? parse_json(text) : parse_csv(text);

    std::unordered_map<std::int64_t, std::size_t> slot;
    slot.reserve(corpus_ids.size());
    for (std::size_t i = 0; i < corpus_ids.size(); ++i) {
        slot.emplace(to_int(corpus_ids[i]), i);
    }
    PlanarCoordinates coords;
    coords.provenance = Provenance::external;
    coords.ids.assign(corpus_ids.begin(), corpus_ids.end());
    coords.points.resize(corpus_ids.size());
    std::vector<bool> seen(corpus_ids.size(), false);
    std::unordered_set<std::int64_t> extra;
    for (const Row& row : rows) {
        if (!std::isfinite(row.point.x) || !std::isfinite(row.point.y)) {
            throw ParseError(row.line, "non-finite coordinate");
        }
        const auto it = slot.find(row.id);
        if (it == slot.end()) {
            if (!extra.insert(row.id).second) {
                throw ParseError(row.line, "duplicate paper_id " + std::to_string(row.id));
            }
            continue;
        }
        if (seen[it->second]) {
            throw ParseError(row.line, "duplicate paper_id " + std::to_string(row.id));
        }
        seen[it->second] = true;
        coords.points[it->second] = row.point;
    }
    std::vector<PaperId> missing;
    for (std::size_t i = 0; i < corpus_ids.size(); ++i) {
        if (!seen[i]) {
            missing.push_back(corpus_ids[i]);
        }
    }
    if (!missing.empty()) {
        throw MissingIds(std::move(missing));
    }
    coords.extra_ids = extra.size();
    return coords;
}

PlanarCoordinates load_projection(const std::filesystem::path& path, std::span<const PaperId> corpus_ids) {
    return parse_projection(read_file(path), corpus_ids);
}

std::string format_projection_csv(const PlanarCoordinates& coords) {
    std::string out = "paper_id,x,y\n";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        out += std::to_string(to_int(coords.ids[i]));
        out += ',';
        format_double(out, coords.points[i].x);
        out += ',';
        format_double(out, coords.points[i].y);
        out += '\n';
    }
    return out;
}

void write_projection(const std::filesystem::path& path, const PlanarCoordinates& coords) {
    write_file_atomic(path, format_projection_csv(coords));
}

PlanarCoordinates pca_project_2d(std::span<const PaperId> ids, MatrixView matrix, PcaOptions options) {
    if (matrix.rows < 3) {
        throw std::invalid_argument("PCA needs at least 3 vectors, got " + std::to_string(matrix.rows));
    }
    if (matrix.cols < 2) {
        throw std::invalid_argument("PCA needs at least 2 dims, got " + std::to_string(matrix.cols));
    }
    if (ids.size() != matrix.rows) {
        throw std::invalid_argument("PCA id count does not match row count");
    }
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> x(matrix.data, static_cast<Eigen::Index>(matrix.rows),
                                       static_cast<Eigen::Index>(matrix.cols));
    if (!x.allFinite()) {
        throw std::invalid_argument("PCA input holds a non-finite value");
    }

    const Eigen::RowVectorXd origin = x.row(0);
    Eigen::MatrixXd centered = x.rowwise() - origin;
    const Eigen::RowVectorXd mean = centered.colwise().sum() / static_cast<double>(matrix.rows);
    centered.rowwise() -= mean;

    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(centered.cols(), centered.cols());
    scatter.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    scatter.triangularView<Eigen::StrictlyUpper>() = scatter.transpose();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("PCA eigendecomposition failed");
    }
    const auto& values = solver.eigenvalues();
    const Eigen::Index d = values.size();
    const double lambda1 = values(d - 1);
    const double lambda2 = values(d - 2);
    const double scale = centered.cwiseAbs().maxCoeff();

    PlanarCoordinates coords;
    coords.provenance = Provenance::pca;
    coords.ids.assign(ids.begin(), ids.end());
    coords.points.assign(matrix.rows, Point{});

    const bool no_variance = scale == 0.0 || lambda1 <= 1e-24 * scale * scale;
    const bool rank_one = !no_variance && lambda2 <= 1e-12 * lambda1;
    if ((no_variance || rank_one) && options.strict) {
        throw DegenerateRank("data rank is below 2");
    }
    coords.degenerate = no_variance || rank_one;
    if (no_variance) {
        return coords;
    }

    auto signed_axis = [&](Eigen::Index column) {
        Eigen::VectorXd v = solver.eigenvectors().col(column);
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < v.size(); ++i) {
            if (std::abs(v(i)) > std::abs(v(arg))) {
                arg = i;
            }
        }
        if (v(arg) < 0) {
            v = -v;
        }
        return v;
    };
    const Eigen::VectorXd xs = centered * signed_axis(d - 1);
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        coords.points[i].x = xs(static_cast<Eigen::Index>(i));
    }
    if (!rank_one) {
        const Eigen::VectorXd ys = centered * signed_axis(d - 2);
        for (std::size_t i = 0; i < matrix.rows; ++i) {
            coords.points[i].y = ys(static_cast<Eigen::Index>(i));
        }
    }
    return coords;
}

PlanarCoordinates pca_project_2d(const embed::EmbeddingSet& embeddings, PcaOptions options) {
    std::vector<double> data(embeddings.data.begin(), embeddings.data.end());
    return pca_project_2d(embeddings.ids, {data.data(), embeddings.size(), embeddings.dims}, options);
}

}  // namespace litmap::projection
