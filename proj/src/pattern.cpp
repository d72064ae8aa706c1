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

#include "fea/pattern.hpp"

#include <algorithm>
#include <cassert>

namespace fea {

SparsityPattern build_pattern(const DofMap& map) {
    const index_t n_nodes = map.n_nodes;
    const index_t npe = map.nodes_per_element();
    const int d = map.d;

    // Invert the element->node lists. All DOFs of a node occur in exactly
    // the same elements, so the column set is computed once per node and
    // replicated for its d rows.
    std::vector<index_t> degree(static_cast<std::size_t>(n_nodes), 0);
    for (const index_t v : map.element_nodes) {
        ++degree[v];
    }
    std::vector<index_t> adj_ptr(static_cast<std::size_t>(n_nodes) + 1, 0);
    for (index_t v = 0; v < n_nodes; ++v) {
        adj_ptr[v + 1] = adj_ptr[v] + degree[v];
    }
    std::vector<index_t> adj(map.element_nodes.size());
    {
        std::vector<index_t> fill = adj_ptr;
        for (index_t e = 0; e < map.n_elements; ++e) {
            for (const index_t v : map.nodes_of(e)) {
                adj[fill[v]++] = e;
            }
        }
    }

#ifndef NDEBUG
    // Duplicate nodes within one element would make an element couple a
    // DOF with itself twice; the DofMap construction cannot produce them.
    for (index_t e = 0; e < map.n_elements; ++e) {
        auto nodes = map.nodes_of(e);
        std::vector<index_t> sorted(nodes.begin(), nodes.end());
        std::sort(sorted.begin(), sorted.end());
        assert(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
               "duplicate node within one element");
    }
#endif

    SparsityPattern p;
    p.n_rows = map.n_dofs;
    p.row_ptr.assign(static_cast<std::size_t>(p.n_rows) + 1, 0);

    // First pass: per-node column counts; second pass: fill.
    std::vector<index_t> scratch;
    scratch.reserve(static_cast<std::size_t>(4 * npe * d));
    std::vector<index_t> node_count(static_cast<std::size_t>(n_nodes), 0);

    const auto gather = [&](index_t v) {
        scratch.clear();
        for (index_t a = adj_ptr[v]; a < adj_ptr[v + 1]; ++a) {
            for (const index_t u : map.nodes_of(adj[a])) {
                const index_t base = u * d;
                for (int k = 0; k < d; ++k) {
                    scratch.push_back(base + k);
                }
            }
        }
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    };

    for (index_t v = 0; v < n_nodes; ++v) {
        gather(v);
        node_count[v] = static_cast<index_t>(scratch.size());
        for (int k = 0; k < d; ++k) {
            p.row_ptr[v * d + k + 1] = node_count[v];
        }
    }
    for (index_t r = 0; r < p.n_rows; ++r) {
        p.row_ptr[r + 1] += p.row_ptr[r];
    }

    p.cols.resize(static_cast<std::size_t>(p.row_ptr[p.n_rows]));
    for (index_t v = 0; v < n_nodes; ++v) {
        if (node_count[v] == 0) {
            continue;
        }
        gather(v);
        for (int k = 0; k < d; ++k) {
            std::copy(scratch.begin(), scratch.end(),
                      p.cols.begin() + p.row_ptr[v * d + k]);
        }
    }
    return p;
}

index_t count_pattern_runs(const SparsityPattern& p) {
    index_t runs = 0;
    for (index_t r = 0; r < p.n_rows; ++r) {
        for (index_t i = p.row_ptr[r]; i < p.row_ptr[r + 1]; ++i) {
            if (i == p.row_ptr[r] || p.cols[i] != p.cols[i - 1] + 1) {
                ++runs;
            }
        }
    }
    return runs;
}

} // namespace fea
