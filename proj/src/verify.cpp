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

#include "fea/verify.hpp"

#include "fea/assembly.hpp"
#include "fea/bench.hpp"
#include "fea/colouring.hpp"
#include "fea/pattern.hpp"

#include <cstring>

namespace fea {

namespace {

// CSR and CRAC store values in the same order (row-major, columns
// ascending), so results are comparable byte for byte across formats.
void compare_values(std::string_view combo, std::span<const double> got,
                    std::span<const double> want, double expected_total,
                    VerifyResult& out) {
    if (got.size() != want.size()) {
        out.failures.push_back(std::string(combo) + ": values length mismatch");
        return;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (std::memcmp(&got[i], &want[i], sizeof(double)) != 0) {
            out.failures.push_back(std::string(combo) + ": values[" + std::to_string(i) +
                                   "] = " + std::to_string(got[i]) + ", sequential has " +
                                   std::to_string(want[i]));
            return;
        }
    }
    double total = 0.0;
    for (const double x : got) {
        total += x;
    }
    if (total != expected_total) {
        out.failures.push_back(std::string(combo) + ": total " + std::to_string(total) +
                               " != expected " + std::to_string(expected_total));
    }
}

template <class M>
void check_spin_entries(std::string_view combo, const M& target, VerifyResult& out) {
    for (index_t r = 0; r <= target.n_rows(); ++r) {
        if (target.rows.raw_entry(r) <= 0) {
            out.failures.push_back(std::string(combo) + ": row entry " + std::to_string(r) +
                                   " not positive after assembly");
            return;
        }
    }
}

} // namespace

VerifyResult verify_methods(const Mesh& mesh, int p, int d, const VerifyOptions& options) {
    const DofMap map = build_dof_map(mesh, p, d);
    std::vector<ElementDofs> dofs;
    dofs.reserve(static_cast<std::size_t>(map.n_elements));
    for (index_t e = 0; e < map.n_elements; ++e) {
        dofs.push_back(element_dofs(map, e));
    }
    const SparsityPattern pattern = build_pattern(map);
    const Colouring colouring = greedy_colouring(map);

    AssemblyJob job{dofs, ones_supplier(map), options.thread_count};

    VerifyResult out;
    out.dofs = map.n_dofs;
    out.nnz = pattern.nnz();
    const double m = static_cast<double>(map.dofs_per_element());
    out.expected_total = static_cast<double>(map.n_elements) * m * m;

    CsrMatrix reference(pattern);
    assemble_sequential(reference, job);
    {
        double total = 0.0;
        for (const double x : reference.values.v) {
            total += x;
        }
        if (total != out.expected_total) {
            out.failures.push_back("seq/csr: total " + std::to_string(total) +
                                   " != expected " + std::to_string(out.expected_total));
        }
        out.checked.push_back("seq/csr");
    }

    const auto check = [&](std::string_view combo, auto& target, const auto& assemble) {
        assemble(target);
        if (options.tamper) {
            options.tamper(combo, std::span<double>(target.values.v));
        }
        compare_values(combo, target.values.v, reference.values.v, out.expected_total, out);
        out.checked.emplace_back(combo);
    };

    {
        CracMatrix t(pattern);
        check("seq/crac", t, [&](auto& g) { assemble_sequential(g, job); });
    }
    {
        CsrAtomicMatrix t(pattern);
        check("atomic/csr", t, [&](auto& g) { assemble_atomic(g, job); });
    }
    {
        CracAtomicMatrix t(pattern);
        check("atomic/crac", t, [&](auto& g) { assemble_atomic(g, job); });
    }
    {
        CsrSpinMatrix t(pattern);
        check("spin/csr", t, [&](auto& g) { assemble_spin(g, job); });
        check_spin_entries("spin/csr", t, out);
    }
    {
        CracSpinMatrix t(pattern);
        check("spin/crac", t, [&](auto& g) { assemble_spin(g, job); });
        check_spin_entries("spin/crac", t, out);
    }
    {
        CsrSpinMatrix t(pattern);
        check("spin-vec/csr", t, [&](auto& g) { assemble_spin_vectorized(g, job); });
        check_spin_entries("spin-vec/csr", t, out);
    }
    {
        CracSpinMatrix t(pattern);
        check("spin-vec/crac", t, [&](auto& g) { assemble_spin_vectorized(g, job); });
        check_spin_entries("spin-vec/crac", t, out);
    }
    {
        CsrMatrix t(pattern);
        check("colour-vec/csr", t,
              [&](auto& g) { assemble_coloured_vectorized(g, job, colouring); });
    }
    {
        CracMatrix t(pattern);
        check("colour-vec/crac", t,
              [&](auto& g) { assemble_coloured_vectorized(g, job, colouring); });
    }

    out.ok = out.failures.empty();
    return out;
}

} // namespace fea
