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

#include "litmap/core/record_store.hpp"

#include <algorithm>

namespace litmap {

RecordStore::RecordStore(std::vector<PaperRecord> records) : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
    const auto dup = std::adjacent_find(records_.begin(), records_.end(),
                                        [](const PaperRecord& a, const PaperRecord& b) { return a.id == b.id; });
    if (dup != records_.end()) {
        throw Error("duplicate paper id " + std::to_string(to_int(dup->id)));
    }
}

const PaperRecord* RecordStore::find(PaperId id) const noexcept {
    const auto it = std::lower_bound(records_.begin(), records_.end(), id,
                                     [](const PaperRecord& r, PaperId key) { return r.id < key; });
    return it != records_.end() && it->id == id ? &*it : nullptr;
}

std::vector<PaperId> RecordStore::ids() const {
    std::vector<PaperId> out;
    out.reserve(records_.size());
    for (const auto& r : records_) {
        out.push_back(r.id);
    }
    return out;
}

}  // namespace litmap
