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

#ifndef FEA_TYPES_HPP
#define FEA_TYPES_HPP

#include <cstdint>
#include <stdexcept>

namespace fea {

/// Index type used for nodes, DOFs, matrix rows/columns and storage offsets.
/// Signed so that row-pointer entries can carry a lock bit in their sign.
using index_t = std::int64_t;

/// Error raised when an assembly touches a coefficient missing from the
/// sparsity pattern, or when a colouring is not conflict free.
struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Error raised by the MSH reader on malformed input.
struct MshParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fea

#endif // FEA_TYPES_HPP
