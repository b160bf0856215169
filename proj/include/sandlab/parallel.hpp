#ifndef SANDLAB_PARALLEL_HPP
#define SANDLAB_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sandlab {

// SANDPILE_LAB_JOBS overrides the requested worker count; 0 means all cores.
inline int effective_jobs(int requested) {
    if (const char* env = std::getenv("SANDPILE_LAB_JOBS")) {
        try {
            requested = std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("SANDPILE_LAB_JOBS must be an integer");
        }
    }
    if (requested <= 0) requested = static_cast<int>(std::thread::hardware_concurrency());
    return requested > 0 ? requested : 1;
}

// Index-addressed map over [0, count): deterministic output placement no
// matter how workers interleave. Exceptions surface on the caller thread.
inline void parallel_for(std::size_t count, int jobs,
                         const std::function<void(std::size_t)>& fn) {
    jobs = effective_jobs(jobs);
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace sandlab

#endif
