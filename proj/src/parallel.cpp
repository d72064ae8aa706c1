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

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace fea {

namespace {

class WorkerPool {
public:
    explicit WorkerPool(int workers) {
        threads_.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) {
            threads_.emplace_back([this] { worker_loop(); });
        }
    }

    ~WorkerPool() {
        {
            std::lock_guard lk(mu_);
            stop_ = true;
        }
        start_cv_.notify_all();
        for (auto& t : threads_) {
            t.join();
        }
    }

    void run(index_t begin, index_t end, index_t chunk,
             const std::function<void(index_t, index_t)>& body) {
        {
            std::lock_guard lk(mu_);
            body_ = &body;
            next_.store(begin, std::memory_order_relaxed);
            end_ = end;
            chunk_ = chunk;
            error_ = nullptr;
            active_ = static_cast<int>(threads_.size());
            ++generation_;
        }
        start_cv_.notify_all();

        work();

        std::unique_lock lk(mu_);
        done_cv_.wait(lk, [this] { return active_ == 0; });
        body_ = nullptr;
        if (error_) {
            std::rethrow_exception(error_);
        }
    }

private:
    void worker_loop() {
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock lk(mu_);
                start_cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_) {
                    return;
                }
                seen = generation_;
            }
            work();
            {
                std::lock_guard lk(mu_);
                if (--active_ == 0) {
                    done_cv_.notify_all();
                }
            }
        }
    }

    void work() {
        for (;;) {
            const index_t b = next_.fetch_add(chunk_, std::memory_order_relaxed);
            if (b >= end_) {
                return;
            }
            const index_t e = std::min(b + chunk_, end_);
            try {
                (*body_)(b, e);
            } catch (...) {
                {
                    std::lock_guard lk(mu_);
                    if (!error_) {
                        error_ = std::current_exception();
                    }
                }
                next_.store(end_, std::memory_order_relaxed); // abandon the rest
                return;
            }
        }
    }

    std::mutex mu_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    std::vector<std::thread> threads_;
    std::uint64_t generation_ = 0;
    int active_ = 0;
    bool stop_ = false;

    const std::function<void(index_t, index_t)>* body_ = nullptr;
    std::atomic<index_t> next_{0};
    index_t end_ = 0;
    index_t chunk_ = 1;
    std::exception_ptr error_;
};

WorkerPool& pool_for(int workers) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<WorkerPool>> pools;
    std::lock_guard lk(mu);
    auto& p = pools[workers];
    if (!p) {
        p = std::make_unique<WorkerPool>(workers);
    }
    return *p;
}

} // namespace

void parallel_for_chunks(index_t begin, index_t end, int thread_count,
                         const std::function<void(index_t, index_t)>& range_body) {
    if (end <= begin) {
        return;
    }
    if (thread_count <= 1) {
        range_body(begin, end);
        return;
    }
    const index_t span = end - begin;
    const index_t chunk = std::max<index_t>(1, span / (static_cast<index_t>(thread_count) * 8));
    pool_for(thread_count - 1).run(begin, end, chunk, range_body);
}

int default_thread_count() {
    if (const char* env = std::getenv("FEA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace fea
