#include "mlfrac/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace mlfrac::detail {

int worker_threads() {
    if (const char* env = std::getenv("MLFRAC_THREADS")) {
        int v = std::atoi(env);
        return v >= 1 ? std::min(v, 64) : 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::clamp(hw == 0u ? 1 : static_cast<int>(hw), 1, 8);
}

}  // namespace mlfrac::detail
