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

#ifndef FEA_VERIFY_HPP
#define FEA_VERIFY_HPP

#include "fea/mesh.hpp"
#include "fea/types.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fea {

struct VerifyOptions {
    int thread_count = 1;
    /// Test hook, invoked with each combination's values array right after
    /// its assembly; lets tests inject a corrupted slot.
    std::function<void(std::string_view combo, std::span<double> values)> tamper;
};

struct VerifyResult {
    bool ok = true;
    index_t dofs = 0;
    index_t nnz = 0;
    double expected_total = 0.0;
    std::vector<std::string> checked; ///< combination labels, e.g. "spin/crac"
    std::vector<std::string> failures;
};

/// Assembles ones element matrices with all five methods on both formats
/// and checks that every values array is bitwise identical to the
/// sequential CSR result, that the total equals the exact sum of all
/// element matrix entries, and that every spin row entry ends positive.
VerifyResult verify_methods(const Mesh& mesh, int p, int d,
                            const VerifyOptions& options = {});

} // namespace fea

#endif // FEA_VERIFY_HPP
