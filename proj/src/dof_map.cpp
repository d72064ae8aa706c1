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

#include "fea/dof_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace fea {

DofMap build_dof_map(const Mesh& mesh, int p, int d) {
    if (p < 1 || d < 1) {
        throw std::invalid_argument("build_dof_map requires p >= 1 and d >= 1");
    }

    DofMap map;
    map.p = p;
    map.d = d;
    map.n_vertices = mesh.n_nodes();
    map.n_edges = mesh.n_edges();
    map.n_elements = mesh.n_elements();

    const index_t per_edge = p - 1;
    const index_t per_interior = static_cast<index_t>(p - 1) * (p - 1);
    map.n_nodes = map.n_vertices + map.n_edges * per_edge + map.n_elements * per_interior;
    map.n_dofs = map.n_nodes * d;

    const index_t edge_base = map.n_vertices;
    const index_t interior_base = map.n_vertices + map.n_edges * per_edge;

    map.element_nodes.reserve(static_cast<std::size_t>(map.n_elements * map.nodes_per_element()));
    for (index_t e = 0; e < map.n_elements; ++e) {
        const auto& el = mesh.elements[e];
        for (int i = 0; i < 4; ++i) {
            map.element_nodes.push_back(el[i]);
        }
        for (int i = 0; i < 4; ++i) {
            const index_t a = el[i];
            const index_t b = el[(i + 1) % 4];
            const index_t g = mesh.edge_index(a, b);
            const index_t base = edge_base + g * per_edge;
            // Edge nodes are stored from the lower towards the higher
            // global vertex, so both incident elements see them identically.
            for (index_t k = 0; k < per_edge; ++k) {
                map.element_nodes.push_back(base + k);
            }
        }
        const index_t base = interior_base + e * per_interior;
        for (index_t k = 0; k < per_interior; ++k) {
            map.element_nodes.push_back(base + k);
        }
    }
    return map;
}

std::vector<std::pair<index_t, index_t>> encode_runs(std::span<const index_t> flat) {
    std::vector<std::pair<index_t, index_t>> runs;
    for (const index_t v : flat) {
        if (!runs.empty() && runs.back().first + runs.back().second == v) {
            ++runs.back().second;
        } else {
            runs.emplace_back(v, 1);
        }
    }
    return runs;
}

ElementDofs element_dofs(const DofMap& map, index_t element) {
    if (element < 0 || element >= map.n_elements) {
        throw std::out_of_range("element index out of range");
    }
    ElementDofs out;
    const auto nodes = map.nodes_of(element);
    out.flat.reserve(nodes.size() * static_cast<std::size_t>(map.d));
    for (const index_t v : nodes) {
        for (int k = 0; k < map.d; ++k) {
            out.flat.push_back(map.dof(v, k));
        }
    }
    out.runs = encode_runs(out.flat);
    return out;
}

ElementMatrix ones_element_matrix(const DofMap& map) {
    return ElementMatrix::ones(map.dofs_per_element());
}

} // namespace fea
