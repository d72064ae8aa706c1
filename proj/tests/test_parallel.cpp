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

#include "fea/parallel.hpp"

#include "fea/assembly.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <atomic>
#include <numeric>
#include <vector>

using namespace fea;

TEST_CASE("parallel_for visits every index exactly once") {
    for (const int threads : {1, 2, 8}) {
        for (const index_t n : {0, 1, 3, 17, 1000}) {
            std::vector<std::atomic<int>> hits(static_cast<std::size_t>(n));
            parallel_for(0, n, threads, [&](index_t i) {
                hits[i].fetch_add(1, std::memory_order_relaxed);
            });
            for (index_t i = 0; i < n; ++i) {
                CHECK(hits[i].load() == 1);
            }
        }
    }
}

TEST_CASE("parallel_for over a sub-range") {
    std::atomic<long> sum{0};
    parallel_for(10, 20, 4, [&](index_t i) { sum.fetch_add(i); });
    CHECK(sum.load() == 10 + 11 + 12 + 13 + 14 + 15 + 16 + 17 + 18 + 19);
}

TEST_CASE("exceptions propagate from workers and the pool stays usable") {
    for (int round = 0; round < 3; ++round) {
        CHECK_THROWS_AS(parallel_for(0, 100, 4,
                                     [&](index_t i) {
                                         if (i == 57) {
                                             throw std::runtime_error("boom");
                                         }
                                     }),
                        std::runtime_error);
        // the same pool must run follow-up work normally
        std::atomic<int> count{0};
        parallel_for(0, 64, 4, [&](index_t) { count.fetch_add(1); });
        CHECK(count.load() == 64);
    }
}

TEST_CASE("parallel assembly propagates missing-entry errors") {
    // pattern from one element, job over four: workers hit absent entries
    const Mesh mesh = generate_structured(2);
    const DofMap map = build_dof_map(mesh, 1, 1);
    std::vector<ElementDofs> dofs;
    for (index_t e = 0; e < map.n_elements; ++e) {
        dofs.push_back(element_dofs(map, e));
    }
    DofMap partial_map = map;
    partial_map.n_elements = 1;
    partial_map.element_nodes.resize(4);
    const SparsityPattern partial = build_pattern(partial_map);

    const AssemblyJob job{dofs, ones_supplier(map), 4};
    {
        CsrAtomicMatrix m(partial);
        CHECK_THROWS_AS(assemble_atomic(m, job), AssemblyError);
    }
    {
        CsrSpinMatrix m(partial);
        CHECK_THROWS_AS(assemble_spin(m, job), AssemblyError);
        for (index_t r = 0; r <= m.n_rows(); ++r) {
            CHECK(m.rows.raw_entry(r) > 0); // error path unlocked its row
        }
    }
    // a valid job on the same pool still works
    const SparsityPattern full = build_pattern(map);
    CsrAtomicMatrix ok(full);
    assemble_atomic(ok, job);
    CHECK(values_total(ok) == 4.0 * 16.0);
}

TEST_CASE("default_thread_count is positive") {
    CHECK(default_thread_count() >= 1);
}
