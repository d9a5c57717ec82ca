#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

namespace mstd {

/// MSTD_WORKERS if set and positive, otherwise the hardware concurrency.
inline unsigned default_workers()
{
    if (const char* env = std::getenv("MSTD_WORKERS")) {
        const std::string_view text(env);
        unsigned value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs task(i) for every i in [0, tasks) on up to `workers` threads. Tasks
/// are claimed dynamically; callers that need deterministic output must
/// write each task's result into its own slot and reduce afterwards. The
/// first exception thrown by any task is rethrown here.
template <class Task>
void parallel_for(std::size_t tasks, unsigned workers, Task&& task)
{
    workers = std::max(1u, workers);
    if (workers == 1 || tasks <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&] {
        for (std::size_t i = next++; i < tasks; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = tasks;
            }
        }
    };
    const auto count = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));
    std::vector<std::jthread> pool;
    pool.reserve(count - 1);
    for (unsigned w = 1; w < count; ++w) pool.emplace_back(body);
    body();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace mstd
