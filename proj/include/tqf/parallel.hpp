#pragma once
// Index-parallel map with results in input order.

#include <cstddef>
#include <functional>
#include <vector>

namespace tqf {

// Worker count used when jobs <= 0: hardware concurrency, at least 1.
int default_jobs();

// Runs body(i) for i in [0, n) on up to `jobs` threads. The first exception
// thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int jobs, F&& fn) {
    std::vector<T> out(n);
    parallel_for(n, jobs, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

}  // namespace tqf
