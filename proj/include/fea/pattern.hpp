/*
 *   Copyright 2026 The fea-assemble Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FEA_PATTERN_HPP
#define FEA_PATTERN_HPP

#include "fea/dof_map.hpp"
#include "fea/types.hpp"

#include <vector>

namespace fea {

/// Global sparsity pattern: rows with strictly ascending column indices.
/// Built once in preprocessing; immutable afterwards.
struct SparsityPattern {
    index_t n_rows = 0;
    std::vector<index_t> row_ptr{0}; ///< n_rows + 1 offsets into cols
    std::vector<index_t> cols;       ///< column indices, ascending per row

    index_t nnz() const { return static_cast<index_t>(cols.size()); }
};

/// Union over all elements of the cross products of their DOF arrays,
/// deduplicated and sorted per row. Deterministic: the same map yields
/// byte-identical arrays.
SparsityPattern build_pattern(const DofMap& map);

inline index_t nnz(const SparsityPattern& p) { return p.nnz(); }

/// Size of a values array with the given number of entries, in megabytes.
inline double values_size_mb(index_t n_entries) {
    return 8.0 * static_cast<double>(n_entries) / 1e6;
}
inline double values_size_mb(const SparsityPattern& p) { return values_size_mb(p.nnz()); }

/// Number of maximal consecutive-column runs summed over all rows.
index_t count_pattern_runs(const SparsityPattern& p);

} // namespace fea

#endif // FEA_PATTERN_HPP
