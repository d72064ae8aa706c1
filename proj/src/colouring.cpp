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

#include "fea/colouring.hpp"

#include <algorithm>
#include <ostream>

namespace fea {

Colouring greedy_colouring(const DofMap& map) {
    const index_t q = map.n_elements;

    // node -> elements inverted index
    std::vector<index_t> degree(static_cast<std::size_t>(map.n_nodes), 0);
    for (const index_t v : map.element_nodes) {
        ++degree[v];
    }
    std::vector<index_t> adj_ptr(static_cast<std::size_t>(map.n_nodes) + 1, 0);
    for (index_t v = 0; v < map.n_nodes; ++v) {
        adj_ptr[v + 1] = adj_ptr[v] + degree[v];
    }
    std::vector<index_t> adj(map.element_nodes.size());
    {
        std::vector<index_t> fill = adj_ptr;
        for (index_t e = 0; e < q; ++e) {
            for (const index_t v : map.nodes_of(e)) {
                adj[fill[v]++] = e;
            }
        }
    }

    Colouring out;
    out.colour_of.assign(static_cast<std::size_t>(q), -1);
    std::vector<char> used;
    for (index_t e = 0; e < q; ++e) {
        std::fill(used.begin(), used.end(), 0);
        for (const index_t v : map.nodes_of(e)) {
            for (index_t a = adj_ptr[v]; a < adj_ptr[v + 1]; ++a) {
                const int c = out.colour_of[adj[a]];
                if (c >= 0) {
                    if (static_cast<std::size_t>(c) >= used.size()) {
                        used.resize(c + 1, 0);
                    }
                    used[c] = 1;
                }
            }
        }
        int colour = 0;
        while (static_cast<std::size_t>(colour) < used.size() && used[colour]) {
            ++colour;
        }
        out.colour_of[e] = colour;
        out.n_colours = std::max(out.n_colours, colour + 1);
    }

    out.colour_classes.resize(static_cast<std::size_t>(out.n_colours));
    for (index_t e = 0; e < q; ++e) {
        out.colour_classes[out.colour_of[e]].push_back(e);
    }
    return out;
}

std::vector<std::pair<int, double>> colour_distribution(const Colouring& colouring) {
    std::size_t total = 0;
    for (const auto& cls : colouring.colour_classes) {
        total += cls.size();
    }
    std::vector<std::pair<int, double>> out;
    out.reserve(colouring.colour_classes.size());
    for (int c = 0; c < colouring.n_colours; ++c) {
        out.emplace_back(c, static_cast<double>(colouring.colour_classes[c].size()) /
                                static_cast<double>(total));
    }
    return out;
}

std::optional<std::string> find_colour_conflict(std::span<const ElementDofs> elements,
                                                const Colouring& colouring) {
    index_t max_dof = -1;
    for (const auto& e : elements) {
        for (const index_t dof : e.flat) {
            max_dof = std::max(max_dof, dof);
        }
    }
    std::vector<index_t> owner(static_cast<std::size_t>(max_dof) + 1, -1);

    for (const auto& cls : colouring.colour_classes) {
        for (const index_t e : cls) {
            for (const index_t dof : elements[e].flat) {
                if (owner[dof] >= 0) {
                    return "elements " + std::to_string(owner[dof]) + " and " +
                           std::to_string(e) + " share dof " + std::to_string(dof) +
                           " within one colour";
                }
                owner[dof] = e;
            }
        }
        for (const index_t e : cls) {
            for (const index_t dof : elements[e].flat) {
                owner[dof] = -1;
            }
        }
    }
    return std::nullopt;
}

void write_colouring_csv(const Colouring& colouring, std::ostream& os) {
    os << "element,colour\n";
    for (std::size_t e = 0; e < colouring.colour_of.size(); ++e) {
        os << e << ',' << colouring.colour_of[e] << '\n';
    }
}

} // namespace fea
