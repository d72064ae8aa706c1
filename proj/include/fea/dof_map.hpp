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

#ifndef FEA_DOF_MAP_HPP
#define FEA_DOF_MAP_HPP

#include "fea/mesh.hpp"
#include "fea/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace fea {

/// Global DOF numbering for a mesh at polynomial order p with d DOFs per
/// node. Nodes are numbered vertices first, then p-1 nodes per edge
/// (consecutive per edge, edges in global edge order), then (p-1)^2
/// interior nodes per element (consecutive per element). Node v carries
/// the contiguous DOFs v*d .. v*d+d-1.
struct DofMap {
    int p = 1;
    int d = 1;
    index_t n_vertices = 0;
    index_t n_edges = 0;
    index_t n_elements = 0;
    index_t n_nodes = 0; ///< vertices + edge nodes + interior nodes
    index_t n_dofs = 0;  ///< n_nodes * d

    /// Flattened per-element node lists, nodes_per_element() entries each.
    /// Local order: 4 vertices CCW, then the 4 local edges in CCW order
    /// (edge nodes running from the lower to the higher global vertex),
    /// then interior nodes row-major.
    std::vector<index_t> element_nodes;

    index_t nodes_per_element() const {
        return static_cast<index_t>(p + 1) * static_cast<index_t>(p + 1);
    }
    index_t dofs_per_element() const { return d * nodes_per_element(); }

    std::span<const index_t> nodes_of(index_t element) const {
        const index_t npe = nodes_per_element();
        return {element_nodes.data() + element * npe, static_cast<std::size_t>(npe)};
    }

    index_t dof(index_t node, int component) const { return node * d + component; }
};

DofMap build_dof_map(const Mesh& mesh, int p, int d);

/// Per-element global DOF indices, in flat form and as the maximal
/// run-length encoding (start, length) of the flat array.
struct ElementDofs {
    std::vector<index_t> flat;
    std::vector<std::pair<index_t, index_t>> runs;
};

ElementDofs element_dofs(const DofMap& map, index_t element);

/// Maximal RLE of consecutive integer runs; expanding the result
/// reproduces the input exactly.
std::vector<std::pair<index_t, index_t>> encode_runs(std::span<const index_t> flat);

/// Dense local stiffness matrix, row-major.
struct ElementMatrix {
    index_t order = 0;
    std::vector<double> values;

    static ElementMatrix ones(index_t order) {
        return {order, std::vector<double>(static_cast<std::size_t>(order * order), 1.0)};
    }
    double& at(index_t r, index_t c) { return values[r * order + c]; }
    double at(index_t r, index_t c) const { return values[r * order + c]; }
};

/// The dummy element matrix: dofs_per_element() x dofs_per_element() ones.
ElementMatrix ones_element_matrix(const DofMap& map);

} // namespace fea

#endif // FEA_DOF_MAP_HPP
