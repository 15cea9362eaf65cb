#pragma once

// Deterministic fan-out helpers. Results never depend on the worker count:
// tasks are identified by index and reduced in index order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace expramsey::detail {

inline unsigned effective_workers(unsigned requested, std::size_t tasks)
{
    unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(tasks, 1)));
}

template <typename Body>
void run_workers(unsigned workers, Body&& body)
{
    if (workers <= 1) {
        body();
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&] { body(); });
    for (auto& t : threads)
        t.join();
}

/// out[i] = fn(i) for i < count; the first exception by index is rethrown.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t count, unsigned workers, Fn&& fn)
{
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    run_workers(effective_workers(workers, count), [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    });
    std::vector<R> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

template <typename R>
struct TaskResult {
    std::optional<R> found;
    std::uint64_t nodes = 0;
};

template <typename R>
struct FirstHit {
    std::optional<R> found;
    std::uint64_t nodes = 0; ///< summed over tasks up to and including the hit
};

/// Runs task(i) in index order semantics and returns the hit of least index.
/// Tasks past a known hit are skipped, so only tasks at or below the final
/// hit contribute nodes; that set is the same for every schedule.
template <typename R, typename Task>
FirstHit<R> first_hit(std::size_t count, unsigned workers, Task&& task)
{
    std::vector<std::optional<TaskResult<R>>> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{count};
    run_workers(effective_workers(workers, count), [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            if (i > best.load())
                continue;
            bool stop = false;
            try {
                results[i] = task(i);
                stop = results[i]->found.has_value();
            } catch (...) {
                errors[i] = std::current_exception();
                stop = true;
            }
            if (stop) {
                std::size_t current = best.load();
                while (i < current && !best.compare_exchange_weak(current, i)) {
                }
            }
        }
    });
    FirstHit<R> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.nodes += results[i]->nodes;
        if (results[i]->found) {
            out.found = std::move(results[i]->found);
            break;
        }
    }
    return out;
}

} // namespace expramsey::detail
