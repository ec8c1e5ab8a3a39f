#include "qdslim/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qdslim {

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("QDSLIM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return cap;
    }
    return hw;
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    const int threads = max_threads();
    if (threads <= 1 || n < 4) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::atomic<bool> failed{false};
    const int workers = static_cast<int>(threads < n ? threads : n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qdslim
