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

#ifndef FEA_TESTS_HELPERS_HPP
#define FEA_TESTS_HELPERS_HPP

#include "fea/assembly.hpp"
#include "fea/dof_map.hpp"
#include "fea/mesh.hpp"
#include "fea/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace fea::testing {

// Independent run-length-encoding oracle: scans for maximal blocks by
// checking every possible extension, no shared code with encode_runs.
inline std::vector<std::pair<index_t, index_t>> rle_oracle(const std::vector<index_t>& flat) {
    std::vector<std::pair<index_t, index_t>> runs;
    std::size_t i = 0;
    while (i < flat.size()) {
        std::size_t j = i;
        while (j + 1 < flat.size() && flat[j + 1] == flat[j] + 1) {
            ++j;
        }
        runs.emplace_back(flat[i], static_cast<index_t>(j - i + 1));
        i = j + 1;
    }
    return runs;
}

// Naive sparsity pattern: set of all (r, c) cross pairs over all elements.
inline std::set<std::pair<index_t, index_t>> pattern_oracle(const DofMap& map) {
    std::set<std::pair<index_t, index_t>> entries;
    for (index_t e = 0; e < map.n_elements; ++e) {
        const auto dofs = element_dofs(map, e);
        for (const index_t r : dofs.flat) {
            for (const index_t c : dofs.flat) {
                entries.emplace(r, c);
            }
        }
    }
    return entries;
}

// Dense assembly oracle: full n-by-n matrix accumulated with plain loops.
struct DenseMatrix {
    index_t n = 0;
    std::vector<double> a;

    explicit DenseMatrix(index_t n_rows) : n(n_rows), a(static_cast<std::size_t>(n * n), 0.0) {}
    double& at(index_t r, index_t c) { return a[r * n + c]; }
    double at(index_t r, index_t c) const { return a[r * n + c]; }
};

inline DenseMatrix assemble_dense(const DofMap& map, const ElementMatrixSupplier& supplier) {
    DenseMatrix dense(map.n_dofs);
    for (index_t e = 0; e < map.n_elements; ++e) {
        const auto dofs = element_dofs(map, e);
        const ElementMatrix k = supplier(e);
        const index_t m = static_cast<index_t>(dofs.flat.size());
        for (index_t r = 0; r < m; ++r) {
            for (index_t c = 0; c < m; ++c) {
                dense.at(dofs.flat[r], dofs.flat[c]) += k.values[r * m + c];
            }
        }
    }
    return dense;
}

// Element matrices with deterministic pseudo-random entries in [0, 1);
// seeded per element so results are schedule independent.
inline ElementMatrixSupplier random_supplier(const DofMap& map, std::uint64_t seed) {
    const index_t m = map.dofs_per_element();
    return [m, seed](index_t e) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(e + 1)));
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        ElementMatrix k{m, std::vector<double>(static_cast<std::size_t>(m * m))};
        for (double& x : k.values) {
            x = dist(rng);
        }
        return k;
    };
}

// Structured mesh with randomly permuted vertex ids: same topology, less
// regular DOF numbering. Keeps element winding intact.
inline Mesh permuted_structured(index_t n, std::mt19937_64& rng) {
    const Mesh base = generate_structured(n);
    std::vector<index_t> perm(static_cast<std::size_t>(base.n_nodes()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<std::array<double, 2>> nodes(base.nodes.size());
    for (index_t v = 0; v < base.n_nodes(); ++v) {
        nodes[perm[v]] = base.nodes[v];
    }
    std::vector<std::array<index_t, 4>> elements = base.elements;
    for (auto& el : elements) {
        for (auto& v : el) {
            v = perm[v];
        }
    }
    return make_mesh(std::move(nodes), std::move(elements));
}

// Random pattern over an n-by-n matrix with the given fill probability.
// Always places the full main diagonal so no row is empty.
inline SparsityPattern random_pattern(index_t n, double fill, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(fill);
    SparsityPattern p;
    p.n_rows = n;
    p.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (index_t r = 0; r < n; ++r) {
        for (index_t c = 0; c < n; ++c) {
            if (c == r || coin(rng)) {
                p.cols.push_back(c);
                ++p.row_ptr[r + 1];
            }
        }
    }
    for (index_t r = 0; r < n; ++r) {
        p.row_ptr[r + 1] += p.row_ptr[r];
    }
    return p;
}

// Pattern from explicit per-row column lists (used for hand-built fixtures).
inline SparsityPattern pattern_from_rows(const std::vector<std::vector<index_t>>& rows) {
    SparsityPattern p;
    p.n_rows = static_cast<index_t>(rows.size());
    p.row_ptr.assign(1, 0);
    for (const auto& row : rows) {
        p.cols.insert(p.cols.end(), row.begin(), row.end());
        p.row_ptr.push_back(static_cast<index_t>(p.cols.size()));
    }
    return p;
}

} // namespace fea::testing

#endif // FEA_TESTS_HELPERS_HPP
