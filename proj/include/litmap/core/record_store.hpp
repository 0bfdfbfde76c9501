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

#include <span>
#include <vector>

#include "litmap/core/types.hpp"

namespace litmap {

/// Records sorted by id, addressable by id.
class RecordStore {
   public:
    RecordStore() = default;
    /// Sorts by id; throws Error on a duplicate id.
    explicit RecordStore(std::vector<PaperRecord> records);

    std::span<const PaperRecord> records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    const PaperRecord* find(PaperId id) const noexcept;
    std::vector<PaperId> ids() const;

   private:
    std::vector<PaperRecord> records_;
};

}  // namespace litmap
