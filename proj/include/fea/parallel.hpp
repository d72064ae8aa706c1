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

#ifndef FEA_PARALLEL_HPP
#define FEA_PARALLEL_HPP

#include "fea/types.hpp"

#include <functional>

namespace fea {

/// Runs body over [begin, end) on thread_count threads (the caller counts
/// as one), handing out index ranges dynamically from a shared counter.
/// Worker threads are cached per thread_count and reused across calls.
/// thread_count <= 1 runs inline on the caller. Exceptions thrown by the
/// body are rethrown on the caller; remaining chunks are abandoned.
void parallel_for_chunks(index_t begin, index_t end, int thread_count,
                         const std::function<void(index_t, index_t)>& range_body);

template <class F>
void parallel_for(index_t begin, index_t end, int thread_count, F&& body) {
    if (thread_count <= 1 || end - begin <= 1) {
        for (index_t i = begin; i < end; ++i) {
            body(i);
        }
        return;
    }
    parallel_for_chunks(begin, end, thread_count, [&body](index_t b, index_t e) {
        for (index_t i = b; i < e; ++i) {
            body(i);
        }
    });
}

/// Default worker count: the FEA_THREADS environment variable when set,
/// otherwise the hardware concurrency.
int default_thread_count();

} // namespace fea

#endif // FEA_PARALLEL_HPP
