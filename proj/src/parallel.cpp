#include "rpcfrag/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace rpcfrag {

unsigned resolve_threads(int requested)
{
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("RPCFRAG_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void CompensatedSum::add(double x)
{
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

}  // namespace rpcfrag
