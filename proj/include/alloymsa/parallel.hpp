#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace alloymsa {

// serial is the reference path kept for tests and the benchmark
enum class Execution { serial, parallel };

void set_thread_count(int n);  // n <= 0 restores the OpenMP default
int thread_count();
void set_default_execution(Execution ex);
Execution default_execution();

// Runs fn(t) for t = 0..n-1.  Results are stored by trial index, so any
// reduction done afterwards in index order is independent of the schedule.
// The exception of the lowest failing trial is rethrown.
template <class T>
std::vector<T> run_trials(std::size_t n, const std::function<T(std::size_t)>& fn,
                          Execution ex = default_execution()) {
    std::vector<T> out(n);
    if (ex == Execution::serial || n < 2) {
        for (std::size_t t = 0; t < n; ++t) out[t] = fn(t);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long t = 0; t < count; ++t) {
        try {
            out[t] = fn(static_cast<std::size_t>(t));
        } catch (...) {
            errors[t] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace alloymsa
