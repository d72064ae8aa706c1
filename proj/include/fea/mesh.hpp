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

#ifndef FEA_MESH_HPP
#define FEA_MESH_HPP

#include "fea/types.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fea {

/// Quadrilateral mesh. Immutable after construction and safe to share
/// across threads.
struct Mesh {
    std::vector<std::array<double, 2>> nodes;
    /// Vertex indices per element, counter-clockwise.
    std::vector<std::array<index_t, 4>> elements;
    /// Unique (lo, hi) vertex pairs, sorted lexicographically. The position
    /// of a pair in this list is the global edge index.
    std::vector<std::array<index_t, 2>> edges;

    index_t n_nodes() const { return static_cast<index_t>(nodes.size()); }
    index_t n_elements() const { return static_cast<index_t>(elements.size()); }
    index_t n_edges() const { return static_cast<index_t>(edges.size()); }

    /// Global index of the edge between vertices a and b (order irrelevant).
    index_t edge_index(index_t a, index_t b) const;
};

/// Validates vertex references and derives the edge list.
Mesh make_mesh(std::vector<std::array<double, 2>> nodes,
               std::vector<std::array<index_t, 4>> elements);

/// n-by-n axis-aligned quads over the unit square. Vertex and element
/// numbering are row-major.
Mesh generate_structured(index_t n);

struct MshImport {
    Mesh mesh;
    /// One entry per class of skipped entities (e.g. triangles).
    std::vector<std::string> warnings;
};

/// Reads the ASCII MSH 2.2 subset: $MeshFormat, $Nodes, $Elements. Only
/// 4-node quads are retained; points and lines are ignored, other surface
/// elements are skipped with a warning, volume or unknown element types are
/// a parse error. Node ids are reindexed to dense 0-based values in file
/// order.
MshImport import_msh(std::string_view text);

/// Writes the same MSH 2.2 subset that import_msh reads; the round trip
/// reproduces the mesh exactly.
void write_msh(const Mesh& mesh, std::ostream& os);

} // namespace fea

#endif // FEA_MESH_HPP
