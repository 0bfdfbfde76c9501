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
#include <span>
#include <string_view>
#include <vector>

/// Data-parallel inner loops shared by the index, embedding and projection
/// code. Every kernel has a scalar reference implementation; vectorized
/// variants are selected once at startup from what the CPU supports.
///
/// Stored vectors are float32, queries and accumulators are double, and all
/// reductions accumulate in double.
namespace litmap::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;
    /// sum_i (row[i] - query[i])^2
    double (*l2_squared_mixed)(const float* row, const double* query, std::size_t n);
    /// sum_i (a[i] - b[i])^2
    double (*l2_squared)(const double* a, const double* b, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// y += alpha * x, x in float32
    void (*axpy_f32)(double alpha, const float* x, double* y, std::size_t n);
};

std::string_view isa_name(Isa isa) noexcept;

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Kernel table for a specific ISA. Throws std::invalid_argument when the
/// ISA was not compiled in or the CPU lacks it.
const KernelTable& table_for(Isa isa);

/// The table used by the library. Picks the widest supported ISA unless the
/// LITMAP_SIMD environment variable (scalar|avx2|neon) overrides it.
const KernelTable& active();

inline double l2_squared(std::span<const float> row, std::span<const double> query) {
    return active().l2_squared_mixed(row.data(), query.data(), row.size());
}

inline double l2_squared(std::span<const double> a, std::span<const double> b) {
    return active().l2_squared(a.data(), b.data(), a.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const float> x, std::span<double> y) {
    active().axpy_f32(alpha, x.data(), y.data(), x.size());
}

}  // namespace litmap::simd
