#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rpcfrag {

// Worker count: requested if positive, else RPCFRAG_THREADS, else the number
// of logical cores.
unsigned resolve_threads(int requested);

// Runs body(i) for i in [0, count) on a pool of workers. Bodies write to
// their own slots, so results do not depend on scheduling. The exception of
// the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body)
{
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::uint64_t chunk = std::max<std::uint64_t>(1, count / (threads * 16ull));
    std::atomic<std::uint64_t> next{0};
    std::mutex mu;
    std::exception_ptr error;
    std::uint64_t error_index = count;
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::uint64_t end = std::min(count, begin + chunk);
            for (std::uint64_t i = begin; i < end; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (i < error_index) {
                        error_index = i;
                        error = std::current_exception();
                    }
                    return;
                }
            }
        }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace rpcfrag
