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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "simd/tables.hpp"

namespace litmap::simd {
namespace {

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(LITMAP_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(LITMAP_HAVE_NEON)
            return true;  // baseline on aarch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& pick_default() {
    if (const char* forced = std::getenv("LITMAP_SIMD"); forced != nullptr && *forced != '\0') {
        const std::string name{forced};
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (isa_name(isa) == name && cpu_supports(isa)) {
                return table_for(isa);
            }
        }
    }
    const auto isas = available_isas();
    return table_for(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (cpu_supports(isa)) {
            out.push_back(isa);
        }
    }
    return out;
}

const KernelTable& table_for(Isa isa) {
    if (!cpu_supports(isa)) {
        throw std::invalid_argument("simd: isa not available: " + std::string(isa_name(isa)));
    }
    switch (isa) {
#if defined(LITMAP_HAVE_AVX2)
        case Isa::avx2:
            return detail::kAvx2Table;
#endif
#if defined(LITMAP_HAVE_NEON)
        case Isa::neon:
            return detail::kNeonTable;
#endif
        default:
            return detail::kScalarTable;
    }
}

const KernelTable& active() {
    static const KernelTable& table = pick_default();
    return table;
}

}  // namespace litmap::simd
