#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace symfp {

/// Runs fn(trial) for trial in [0, trials) on `workers` threads and returns
/// the results in trial order. Worker w owns the stripe w, w+W, w+2W, ...;
/// results never depend on the worker count because each trial derives its
/// own seed and the caller reduces the returned vector sequentially.
template <class Fn>
auto run_trials(std::size_t trials, std::size_t workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::uint64_t>> {
    using R = std::invoke_result_t<Fn&, std::uint64_t>;
    std::vector<R> out(trials);
    if (workers <= 1 || trials <= 1) {
        for (std::size_t t = 0; t < trials; ++t) out[t] = fn(static_cast<std::uint64_t>(t));
        return out;
    }
    if (workers > trials) workers = trials;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t = w; t < trials; t += workers) out[t] = fn(static_cast<std::uint64_t>(t));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace symfp
