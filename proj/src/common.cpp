#include "qspskt/common.hpp"

#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace qspskt {

int worker_count() {
    static const int cached = [] {
        if (const char* env = std::getenv("QSPSKT_THREADS")) {
            int n = std::atoi(env);
            if (n >= 1) return n;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = static_cast<std::size_t>(worker_count());
    if (n == 0) return;
    if (workers <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t used = workers < n ? workers : n;
    pool.reserve(used);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (std::size_t w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += used) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qspskt
