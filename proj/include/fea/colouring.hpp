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

#ifndef FEA_COLOURING_HPP
#define FEA_COLOURING_HPP

#include "fea/dof_map.hpp"
#include "fea/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fea {

/// Partition of the elements such that no two elements of the same colour
/// share a node; each colour class can then be assembled in parallel
/// without locks.
struct Colouring {
    std::vector<int> colour_of;                       ///< per element
    std::vector<std::vector<index_t>> colour_classes; ///< ascending element ids
    int n_colours = 0;
};

/// Classic greedy colouring: elements in ascending index order, each takes
/// the smallest colour unused by its node-sharing neighbours.
Colouring greedy_colouring(const DofMap& map);

/// Per-colour element fraction; fractions sum to 1.
std::vector<std::pair<int, double>> colour_distribution(const Colouring& colouring);

/// Checks that no two same-colour elements share a DOF. Returns a
/// description of the first conflict, or nullopt when the colouring is
/// valid for these elements.
std::optional<std::string> find_colour_conflict(std::span<const ElementDofs> elements,
                                                const Colouring& colouring);

/// CSV dump, header "element,colour".
void write_colouring_csv(const Colouring& colouring, std::ostream& os);

} // namespace fea

#endif // FEA_COLOURING_HPP
