#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gbx {

/// Runs fn(i) for every i in [0, count), split into contiguous chunks over at
/// most `threads` workers. Callers write results into per-index slots and
/// reduce sequentially afterwards, so outputs never depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn && fn)
{
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::size_t const workers = std::min<std::size_t>(threads, count);
    std::size_t const chunk = (count + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    std::size_t const begin = w * chunk;
                    std::size_t const end = std::min(count, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) {
                        fn(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto const & e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace gbx
