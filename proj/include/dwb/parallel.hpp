#pragma once

// Deterministic work splitting: results are merged by task index, so the
// outcome never depends on the worker count.

#include <functional>
#include <thread>
#include <vector>

namespace dwb {

template <typename T, typename F>
std::vector<T> parallel_map(int jobs, std::size_t n, F && f)
{
    std::vector<T> out(n);
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f(i);
        return out;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < n; i += workers)
                    out[i] = f(i);
            }
            catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto & t : pool)
        t.join();
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}
