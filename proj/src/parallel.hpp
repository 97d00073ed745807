#ifndef DIVSCOPE_PARALLEL_HPP
#define DIVSCOPE_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace divscope {

// Runs fn(worker, begin, end) on `threads` workers over contiguous chunks of
// [0, total). Chunks are a pure function of (total, threads), so any output
// written to disjoint slices is identical for every thread count. The first
// exception thrown by a worker is rethrown on the calling thread.
template <typename Fn>
void parallel_chunks(std::size_t total, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = 1;
    const std::size_t workers =
        std::min<std::size_t>(threads, total == 0 ? 1 : total);

    if (workers <= 1) {
        fn(std::size_t{0}, std::size_t{0}, total);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = total * w / workers;
        const std::size_t end = total * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end]() {
            try {
                fn(w, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace divscope

#endif
