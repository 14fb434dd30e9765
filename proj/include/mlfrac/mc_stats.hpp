#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "mlfrac/errors.hpp"
#include "mlfrac/parallel.hpp"
#include "mlfrac/rng.hpp"

namespace mlfrac {

// Monte Carlo estimate with component-wise standard errors, reproducible
// from (samples, seed).
struct McEstimate {
    std::complex<double> value;
    double se_re = 0.0;
    double se_im = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    double std_error() const { return std::sqrt(se_re * se_re + se_im * se_im); }
};

namespace detail {

struct Moments {
    double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;

    void add(std::complex<double> v) {
        sum_re += v.real();
        sum_im += v.imag();
        sum_re2 += v.real() * v.real();
        sum_im2 += v.imag() * v.imag();
    }
    void merge(const Moments& o) {
        sum_re += o.sum_re;
        sum_im += o.sum_im;
        sum_re2 += o.sum_re2;
        sum_im2 += o.sum_im2;
    }
    McEstimate finish(std::uint64_t samples, std::uint64_t seed) const {
        const double n = static_cast<double>(samples);
        const double mre = sum_re / n, mim = sum_im / n;
        double vre = std::max(0.0, sum_re2 / n - mre * mre);
        double vim = std::max(0.0, sum_im2 / n - mim * mim);
        return McEstimate{{mre, mim}, std::sqrt(vre / n), std::sqrt(vim / n),
                          samples, seed};
    }
};

inline constexpr std::uint64_t kMcChunk = 8192;

// One independent rng stream per chunk; chunk results merged in order, so the
// estimate is identical for any thread count.
template <typename DrawFn>
McEstimate run_mc(std::uint64_t samples, std::uint64_t seed, DrawFn&& draw) {
    if (samples < 1)
        throw InvalidArgumentError("Monte Carlo needs samples >= 1");
    auto parts = run_chunks<Moments>(
        samples, kMcChunk,
        [&](std::uint64_t chunk, std::uint64_t b, std::uint64_t e) {
            rng::Stream stream(seed, chunk);
            Moments m;
            for (std::uint64_t i = b; i < e; ++i) m.add(draw(stream));
            return m;
        });
    Moments total;
    for (const Moments& p : parts) total.merge(p);
    return total.finish(samples, seed);
}

}  // namespace detail
}  // namespace mlfrac
