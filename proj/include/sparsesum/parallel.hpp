#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <latch>
#include <mutex>
#include <queue>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace sparsesum {

// Block length of the fixed reduction tree. Every floating-point reduction in
// the library sums terms sequentially inside blocks of this length and then
// combines block results pairwise, so results do not depend on thread count.
inline constexpr std::size_t kReduceBlock = 1024;

template <typename T>
T pairwise_sum(std::span<const T> values) {
    if (values.empty()) {
        return T{};
    }
    if (values.size() <= 16) {
        T acc = values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            acc += values[i];
        }
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
    return pairwise_sum(std::span<const T>(values));
}

/// Fixed-size worker pool. Work is handed out as index ranges; a call made
/// from inside a worker runs inline, so nested parallel loops cannot deadlock.
class Executor {
public:
    explicit Executor(unsigned threads = 1) : threads_(std::max(1u, threads)) {
        for (unsigned i = 1; i < threads_; ++i) {
            workers_.emplace_back([this](std::stop_token st) { worker_loop(st); });
        }
    }

    Executor(const Executor&) = delete;
    Executor& operator=(const Executor&) = delete;

    ~Executor() {
        {
            std::lock_guard lock(mutex_);
            for (auto& w : workers_) {
                w.request_stop();
            }
        }
        cv_.notify_all();
    }

    unsigned threads() const { return threads_; }

    static const Executor& serial() {
        static const Executor instance(1);
        return instance;
    }

    // Thread count from an explicit request, else EXPSUM_THREADS, else the
    // hardware concurrency.
    static unsigned resolve_threads(unsigned requested) {
        if (requested > 0) {
            return requested;
        }
        if (const char* env = std::getenv("EXPSUM_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v > 0) {
                    return static_cast<unsigned>(v);
                }
            } catch (const std::exception&) {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    /// Calls fn(begin, end) over a partition of [0, n). Exceptions thrown by
    /// any chunk are rethrown (first one wins) after all chunks finish.
    template <typename Fn>
    void for_each_range(std::size_t n, Fn&& fn) const {
        if (n == 0) {
            return;
        }
        const std::size_t chunks = std::min<std::size_t>(n, threads_ == 1 ? 1 : 4 * threads_);
        if (chunks == 1 || in_worker()) {
            fn(std::size_t{0}, n);
            return;
        }
        std::latch done(static_cast<std::ptrdiff_t>(chunks));
        std::exception_ptr error;
        std::mutex error_mutex;
        auto run_chunk = [&](std::size_t c) {
            const std::size_t begin = n * c / chunks;
            const std::size_t end = n * (c + 1) / chunks;
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
            done.count_down();
        };
        {
            std::lock_guard lock(mutex_);
            for (std::size_t c = 1; c < chunks; ++c) {
                tasks_.push([&run_chunk, c] { run_chunk(c); });
            }
        }
        cv_.notify_all();
        run_chunk(0);
        // Help drain the queue instead of idling while our chunks are pending.
        while (!done.try_wait()) {
            std::function<void()> task;
            {
                std::lock_guard lock(mutex_);
                if (!tasks_.empty()) {
                    task = std::move(tasks_.front());
                    tasks_.pop();
                }
            }
            if (task) {
                in_worker() = true;
                task();
                in_worker() = false;
            } else {
                std::this_thread::yield();
            }
        }
        if (error) {
            std::rethrow_exception(error);
        }
    }

    /// out[i] = fn(i) for i in [0, n).
    template <typename T, typename Fn>
    std::vector<T> map(std::size_t n, Fn&& fn) const {
        std::vector<T> out(n);
        for_each_range(n, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                out[i] = fn(i);
            }
        });
        return out;
    }

    /// Deterministic reduction of n terms. block_fn(begin, end) returns the
    /// sequential sum over [begin, end); block boundaries are fixed multiples of
    /// `block`, and block sums are combined pairwise.
    template <typename T, typename BlockFn>
    T reduce(std::size_t n, BlockFn&& block_fn, std::size_t block = kReduceBlock) const {
        if (n == 0) {
            return T{};
        }
        const std::size_t blocks = (n + block - 1) / block;
        std::vector<T> partial = map<T>(blocks, [&](std::size_t b) {
            return block_fn(b * block, std::min(n, (b + 1) * block));
        });
        return pairwise_sum(partial);
    }

private:
    static bool& in_worker() {
        thread_local bool flag = false;
        return flag;
    }

    void worker_loop(std::stop_token st) {
        in_worker() = true;
        while (true) {
            std::function<void()> task;
            {
                std::unique_lock lock(mutex_);
                cv_.wait(lock, [&] { return st.stop_requested() || !tasks_.empty(); });
                if (st.stop_requested() && tasks_.empty()) {
                    return;
                }
                task = std::move(tasks_.front());
                tasks_.pop();
            }
            task();
        }
    }

    unsigned threads_;
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    mutable std::queue<std::function<void()>> tasks_;
    std::vector<std::jthread> workers_;
};

}  // namespace sparsesum
