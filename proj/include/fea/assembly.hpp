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

#ifndef FEA_ASSEMBLY_HPP
#define FEA_ASSEMBLY_HPP

#include "fea/colouring.hpp"
#include "fea/dof_map.hpp"
#include "fea/formats.hpp"
#include "fea/parallel.hpp"
#include "fea/types.hpp"

#include <cstdio>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace fea {

/// Produces the local stiffness matrix of an element. Called once per
/// element on every assembly, concurrently from worker threads, so it must
/// be thread safe and deterministic per element.
using ElementMatrixSupplier = std::function<ElementMatrix(index_t element)>;

/// The dummy supplier used by the benchmarks: a fresh ones matrix per call.
inline ElementMatrixSupplier ones_supplier(const DofMap& map) {
    const index_t m = map.dofs_per_element();
    return [m](index_t) { return ElementMatrix::ones(m); };
}

/// A stream of elements to accumulate into a global matrix. Every flat DOF
/// must be a valid row of the target and every cross pair must exist in
/// its pattern.
struct AssemblyJob {
    std::span<const ElementDofs> elements;
    ElementMatrixSupplier element_matrix;
    int thread_count = 1;
};

template <class M>
concept lockable_target = M::rows_type::lockable;

template <class M>
concept atomic_target = M::values_type::atomic;

template <class M>
concept plain_target = !lockable_target<M> && !atomic_target<M>;

namespace detail {

[[noreturn]] inline void missing_entry(index_t element, index_t r, index_t c) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "assembly hit a coefficient missing from the pattern: "
                  "element %lld, (%lld, %lld)",
                  static_cast<long long>(element), static_cast<long long>(r),
                  static_cast<long long>(c));
    throw AssemblyError(buf);
}

// Scalar accumulation of one element: G(D(r), D(c)) += K(r, c).
template <class M>
void scatter_element(M& target, const AssemblyJob& job, index_t e) {
    const ElementMatrix k = job.element_matrix(e);
    const auto& dofs = job.elements[e].flat;
    const index_t m = static_cast<index_t>(dofs.size());
    for (index_t r = 0; r < m; ++r) {
        const index_t row = dofs[r];
        assert(row >= 0 && row < target.n_rows() && "element DOF outside target");
        for (index_t c = 0; c < m; ++c) {
            const auto pos = target.locate(row, dofs[c]);
            if (!pos) {
                missing_entry(e, row, dofs[c]);
            }
            target.values.add(*pos, k.values[r * m + c]);
        }
    }
}

// Run-wise accumulation of one local row via contiguous slice additions.
template <class M>
void scatter_row_runs(M& target, const ElementDofs& dofs, const ElementMatrix& k,
                      index_t local_row) {
    const index_t m = static_cast<index_t>(dofs.flat.size());
    const index_t row = dofs.flat[local_row];
    assert(row >= 0 && row < target.n_rows() && "element DOF outside target");
    const double* k_row = k.values.data() + local_row * m;
    index_t c = 0;
    for (const auto& [start, len] : dofs.runs) {
        target.add_slice(row, start, {k_row + c, static_cast<std::size_t>(len)});
        c += len;
    }
}

} // namespace detail

/// Baseline: three nested loops, no threading, no vectorization.
template <plain_target M>
void assemble_sequential(M& target, const AssemblyJob& job) {
    const index_t n = static_cast<index_t>(job.elements.size());
    for (index_t e = 0; e < n; ++e) {
        detail::scatter_element(target, job, e);
    }
}

/// Parallel element loop; every coefficient update is an atomic fetch_add.
template <atomic_target M>
void assemble_atomic(M& target, const AssemblyJob& job) {
    const index_t n = static_cast<index_t>(job.elements.size());
    parallel_for(0, n, job.thread_count,
                 [&](index_t e) { detail::scatter_element(target, job, e); });
}

/// Parallel element loop; each global row is locked through its spin_int
/// row-pointer entry for the duration of one local row's scalar updates.
template <lockable_target M>
void assemble_spin(M& target, const AssemblyJob& job) {
    const index_t n = static_cast<index_t>(job.elements.size());
    parallel_for(0, n, job.thread_count, [&](index_t e) {
        const ElementMatrix k = job.element_matrix(e);
        const auto& dofs = job.elements[e].flat;
        const index_t m = static_cast<index_t>(dofs.size());
        for (index_t r = 0; r < m; ++r) {
            const index_t row = dofs[r];
            assert(row >= 0 && row < target.n_rows() && "element DOF outside target");
            target.rows.lock(row);
            for (index_t c = 0; c < m; ++c) {
                const auto pos = target.locate(row, dofs[c]);
                if (!pos) {
                    target.rows.unlock(row);
                    detail::missing_entry(e, row, dofs[c]);
                }
                target.values.add(*pos, k.values[r * m + c]);
            }
            target.rows.unlock(row);
        }
    });
}

/// Like assemble_spin, but walks the element's DOF runs and adds whole
/// aligned column slices per run.
template <lockable_target M>
void assemble_spin_vectorized(M& target, const AssemblyJob& job) {
    const index_t n = static_cast<index_t>(job.elements.size());
    parallel_for(0, n, job.thread_count, [&](index_t e) {
        const ElementMatrix k = job.element_matrix(e);
        const auto& dofs = job.elements[e];
        const index_t m = static_cast<index_t>(dofs.flat.size());
        for (index_t r = 0; r < m; ++r) {
            const index_t row = dofs.flat[r];
            target.rows.lock(row);
            detail::scatter_row_runs(target, dofs, k, r);
            target.rows.unlock(row);
        }
    });
}

/// Sequential outer loop over colours, parallel inner loop over a colour's
/// elements, slice additions without any locking. The parallel loop joins
/// before the next colour starts.
template <plain_target M>
void assemble_coloured_vectorized(M& target, const AssemblyJob& job,
                                  const Colouring& colouring) {
#ifndef NDEBUG
    if (const auto conflict = find_colour_conflict(job.elements, colouring)) {
        throw AssemblyError("invalid colouring: " + *conflict);
    }
#endif
    for (const auto& colour_class : colouring.colour_classes) {
        const index_t n = static_cast<index_t>(colour_class.size());
        parallel_for(0, n, job.thread_count, [&](index_t i) {
            const index_t e = colour_class[i];
            const ElementMatrix k = job.element_matrix(e);
            const auto& dofs = job.elements[e];
            const index_t m = static_cast<index_t>(dofs.flat.size());
            for (index_t r = 0; r < m; ++r) {
                detail::scatter_row_runs(target, dofs, k, r);
            }
        });
    }
}

} // namespace fea

#endif // FEA_ASSEMBLY_HPP
