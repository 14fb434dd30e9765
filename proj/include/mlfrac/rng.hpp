#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mlfrac::rng {

// Reproducible stream: (seed, stream_id) fully determines the draw sequence.
// Monte Carlo drivers assign one stream per work chunk and merge results in
// chunk order, so outputs do not depend on thread scheduling. Distributions
// are implemented here rather than taken from <random> because the standard
// leaves their algorithms unspecified; mt19937_64 itself is pinned by the
// standard.
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : eng_(mix(seed, stream_id)) {}

    // Uniform on [2^-53, 1 - 2^-53]; never returns 0 or 1.
    double uniform() {
        std::uint64_t x = eng_();
        return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    // Gamma(shape, 1). Marsaglia-Tsang for shape >= 1, boosted by
    // U^{1/shape} for shape < 1.
    double gamma(double shape) {
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

    // Discrete index with the given weights (assumed to sum to ~1).
    int categorical(const double* w, int n) {
        double u = uniform();
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += w[i];
            if (u < acc) return i;
        }
        return n - 1;
    }

    std::uint64_t raw() { return eng_(); }

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
        // splitmix64 finalizer over seed and stream id
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mlfrac::rng
