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

#include "fea/formats.hpp"

namespace fea {

CracArrays build_crac_arrays(const SparsityPattern& p) {
    CracArrays a;
    a.row_ptr.reserve(static_cast<std::size_t>(p.n_rows) + 1);
    a.col_align.reserve(2 * static_cast<std::size_t>(count_pattern_runs(p)) + 2);

    for (index_t r = 0; r < p.n_rows; ++r) {
        a.row_ptr.push_back(static_cast<index_t>(a.col_align.size()));
        for (index_t i = p.row_ptr[r]; i < p.row_ptr[r + 1]; ++i) {
            if (i == p.row_ptr[r] || p.cols[i] != p.cols[i - 1] + 1) {
                a.col_align.push_back(p.cols[i]); // column run start
                a.col_align.push_back(i);         // its position in values
            }
        }
    }
    a.row_ptr.push_back(static_cast<index_t>(a.col_align.size()));
    // Final pair: the column slot is never read, the values position marks
    // the end of the values array.
    a.col_align.push_back(0);
    a.col_align.push_back(p.nnz());
    return a;
}

} // namespace fea
