#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rbc::par {

/// Parallel loop over [0, n).  The body must only write to disjoint state
/// (or thread-local buffers merged afterwards in index order), so results
/// are identical for every thread count.
template <class F>
void for_n(int64_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; ++i) body(i);
#else
    for (int64_t i = 0; i < n; ++i) body(i);
#endif
}

/// Serial reference twin of for_n, kept for testing and benchmarks.
template <class F>
void for_n_serial(int64_t n, F&& body) {
    for (int64_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline int thread_id() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Per-thread accumulation buffers, merged in thread-index order so the
/// result does not depend on the schedule.
template <class T>
class Accumulators {
public:
    explicit Accumulators(size_t size) : bufs_(max_threads(), std::vector<T>(size, T{})) {}

    std::vector<T>& local() { return bufs_[thread_id()]; }

    std::vector<T> merged() const {
        std::vector<T> out(bufs_[0].size(), T{});
        for (const auto& b : bufs_)
            for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
        return out;
    }

private:
    std::vector<std::vector<T>> bufs_;
};

} // namespace rbc::par
