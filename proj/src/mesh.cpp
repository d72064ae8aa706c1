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

#include "fea/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace fea {

index_t Mesh::edge_index(index_t a, index_t b) const {
    const std::array<index_t, 2> key{std::min(a, b), std::max(a, b)};
    const auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) {
        throw std::out_of_range("no such edge in mesh");
    }
    return static_cast<index_t>(it - edges.begin());
}

Mesh make_mesh(std::vector<std::array<double, 2>> nodes,
               std::vector<std::array<index_t, 4>> elements) {
    Mesh m;
    m.nodes = std::move(nodes);
    m.elements = std::move(elements);

    const index_t n = m.n_nodes();
    m.edges.reserve(m.elements.size() * 4);
    for (const auto& el : m.elements) {
        for (int i = 0; i < 4; ++i) {
            const index_t a = el[i];
            const index_t b = el[(i + 1) % 4];
            if (a < 0 || a >= n || b < 0 || b >= n) {
                throw std::out_of_range("element references vertex outside mesh");
            }
            if (a == b) {
                throw std::invalid_argument("degenerate element edge");
            }
            m.edges.push_back({std::min(a, b), std::max(a, b)});
        }
    }
    std::sort(m.edges.begin(), m.edges.end());
    m.edges.erase(std::unique(m.edges.begin(), m.edges.end()), m.edges.end());
    return m;
}

Mesh generate_structured(index_t n) {
    if (n < 1) {
        throw std::invalid_argument("structured mesh needs n >= 1");
    }
    const index_t nv = n + 1;
    std::vector<std::array<double, 2>> nodes;
    nodes.reserve(static_cast<std::size_t>(nv * nv));
    const double h = 1.0 / static_cast<double>(n);
    for (index_t i = 0; i < nv; ++i) {
        for (index_t j = 0; j < nv; ++j) {
            nodes.push_back({static_cast<double>(j) * h, static_cast<double>(i) * h});
        }
    }

    std::vector<std::array<index_t, 4>> elements;
    elements.reserve(static_cast<std::size_t>(n * n));
    for (index_t i = 0; i < n; ++i) {
        for (index_t j = 0; j < n; ++j) {
            const index_t v0 = i * nv + j;
            elements.push_back({v0, v0 + 1, v0 + nv + 1, v0 + nv});
        }
    }
    return make_mesh(std::move(nodes), std::move(elements));
}

namespace {

// Element types we pass over without complaint: boundary points and lines.
bool silently_ignored(long type) {
    return type == 15 || type == 1 || type == 8 || type == 26 || type == 27;
}

// Other surface elements: retained meshes must be quad-only, but stray
// triangles or high-order quads are skipped with a warning.
bool skippable_surface(long type) {
    switch (type) {
        case 2:  // 3-node triangle
        case 9:  // 6-node triangle
        case 10: // 9-node quad
        case 16: // 8-node quad
        case 20:
        case 21:
        case 22:
        case 23:
        case 24:
        case 25:
            return true;
        default:
            return false;
    }
}

std::string next_content_line(std::istringstream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") != std::string::npos) {
            return line;
        }
    }
    throw MshParseError("unexpected end of file");
}

} // namespace

MshImport import_msh(std::string_view text) {
    std::istringstream in{std::string(text)};

    std::unordered_map<long, index_t> node_ids;
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<index_t, 4>> elements;
    std::vector<std::string> warnings;

    bool seen_format = false;
    bool seen_nodes = false;
    bool seen_elements = false;
    long skipped_surface = 0;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] != '$') {
            continue;
        }
        const std::string section = line.substr(1);

        if (section == "MeshFormat") {
            std::istringstream fmt(next_content_line(in));
            std::string version;
            int file_type = -1;
            int data_size = -1;
            fmt >> version >> file_type >> data_size;
            if (fmt.fail() || version != "2.2" || file_type != 0 || data_size != 8) {
                throw MshParseError("unsupported mesh format header (expected \"2.2 0 8\")");
            }
            if (next_content_line(in) != "$EndMeshFormat") {
                throw MshParseError("missing $EndMeshFormat");
            }
            seen_format = true;
        } else if (section == "Nodes") {
            if (!seen_format) {
                throw MshParseError("$Nodes before $MeshFormat");
            }
            long count = -1;
            {
                std::istringstream hdr(next_content_line(in));
                hdr >> count;
                if (hdr.fail() || count < 0) {
                    throw MshParseError("malformed node count");
                }
            }
            nodes.reserve(static_cast<std::size_t>(count));
            for (long k = 0; k < count; ++k) {
                const std::string nl = next_content_line(in);
                if (nl == "$EndNodes") {
                    throw MshParseError("node section ended before declared count");
                }
                std::istringstream ns(nl);
                long id;
                double x, y, z;
                ns >> id >> x >> y >> z;
                if (ns.fail()) {
                    throw MshParseError("malformed node line");
                }
                if (!node_ids.emplace(id, static_cast<index_t>(nodes.size())).second) {
                    throw MshParseError("duplicate node id");
                }
                nodes.push_back({x, y});
            }
            if (next_content_line(in) != "$EndNodes") {
                throw MshParseError("missing $EndNodes");
            }
            seen_nodes = true;
        } else if (section == "Elements") {
            if (!seen_nodes) {
                throw MshParseError("$Elements before $Nodes");
            }
            long count = -1;
            {
                std::istringstream hdr(next_content_line(in));
                hdr >> count;
                if (hdr.fail() || count < 0) {
                    throw MshParseError("malformed element count");
                }
            }
            for (long k = 0; k < count; ++k) {
                const std::string el = next_content_line(in);
                if (el == "$EndElements") {
                    throw MshParseError("element section ended before declared count");
                }
                std::istringstream es(el);
                long id, type, ntags;
                es >> id >> type >> ntags;
                if (es.fail() || ntags < 0) {
                    throw MshParseError("malformed element line");
                }
                for (long t = 0; t < ntags; ++t) {
                    long tag;
                    es >> tag;
                }
                if (es.fail()) {
                    throw MshParseError("malformed element tags");
                }
                if (type == 3) {
                    std::array<index_t, 4> quad{};
                    for (int v = 0; v < 4; ++v) {
                        long ref;
                        es >> ref;
                        if (es.fail()) {
                            throw MshParseError("malformed quad connectivity");
                        }
                        const auto it = node_ids.find(ref);
                        if (it == node_ids.end()) {
                            throw MshParseError("element references unknown node id");
                        }
                        quad[v] = it->second;
                    }
                    elements.push_back(quad);
                } else if (silently_ignored(type)) {
                    // boundary entity, rest of the line is irrelevant
                } else if (skippable_surface(type)) {
                    ++skipped_surface;
                } else {
                    throw MshParseError("mesh contains non-quad volume or unknown element type " +
                                        std::to_string(type));
                }
            }
            if (next_content_line(in) != "$EndElements") {
                throw MshParseError("missing $EndElements");
            }
            seen_elements = true;
        } else {
            // Unsupported section: skip to its end marker.
            const std::string end = "$End" + section;
            bool closed = false;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') {
                    line.pop_back();
                }
                if (line == end) {
                    closed = true;
                    break;
                }
            }
            if (!closed) {
                throw MshParseError("unterminated section " + section);
            }
        }
    }

    if (!seen_format || !seen_nodes || !seen_elements) {
        throw MshParseError("file lacks $MeshFormat, $Nodes or $Elements");
    }
    if (skipped_surface > 0) {
        warnings.push_back("skipped " + std::to_string(skipped_surface) +
                           " non-quad surface element(s)");
    }

    MshImport out;
    out.mesh = make_mesh(std::move(nodes), std::move(elements));
    out.warnings = std::move(warnings);
    return out;
}

void write_msh(const Mesh& mesh, std::ostream& os) {
    os << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
    os << "$Nodes\n" << mesh.n_nodes() << "\n";
    char buf[96];
    for (index_t i = 0; i < mesh.n_nodes(); ++i) {
        std::snprintf(buf, sizeof(buf), "%lld %.17g %.17g 0\n",
                      static_cast<long long>(i + 1), mesh.nodes[i][0], mesh.nodes[i][1]);
        os << buf;
    }
    os << "$EndNodes\n";
    os << "$Elements\n" << mesh.n_elements() << "\n";
    for (index_t e = 0; e < mesh.n_elements(); ++e) {
        const auto& el = mesh.elements[e];
        os << (e + 1) << " 3 2 0 1";
        for (const index_t v : el) {
            os << ' ' << (v + 1);
        }
        os << '\n';
    }
    os << "$EndElements\n";
}

} // namespace fea
