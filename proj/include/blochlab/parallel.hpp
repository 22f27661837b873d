#pragma once

#include <atomic>
#include <cstddef>
#include <functional>

namespace blochlab {

// Deterministic work-sharing helper. parallel_for(n, body) invokes
// body(i) exactly once for each i in [0, n); each index writes only its own
// output slot, so the result is a pure function of the inputs and cannot
// depend on the thread count or on scheduling. Threads are spawned per call
// (no long-lived pool): call sites are coarse-grained enough that spawn cost
// is noise, and it keeps the helper state-free.
class ThreadPool {
public:
    // threads < 1 is clamped to 1. Pass 0/negative to mean "serial".
    explicit ThreadPool(int threads);

    // Convenience: respects the BLOCHLAB_THREADS environment variable, else
    // uses std::thread::hardware_concurrency().
    static int default_thread_count();

    int thread_count() const { return threads_; }

    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) const;

private:
    int threads_;
};

} // namespace blochlab
