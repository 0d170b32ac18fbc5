#include "alloymsa/parallel.hpp"

#include <atomic>

#include <omp.h>

namespace alloymsa {

namespace {
std::atomic<int> g_threads{0};
std::atomic<Execution> g_execution{Execution::parallel};
}  // namespace

void set_thread_count(int n) { g_threads = n > 0 ? n : 0; }

int thread_count() {
    int n = g_threads;
    return n > 0 ? n : omp_get_max_threads();
}

void set_default_execution(Execution ex) { g_execution = ex; }
Execution default_execution() { return g_execution; }

}  // namespace alloymsa
