#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mlfrac/errors.hpp"

namespace mlfrac {

using Complex = std::complex<double>;

namespace detail_quad {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (QUADPACK values).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F, typename R>
void kronrod_cell(F& f, double a, double b, R& value, double& err) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    R ik{}, ig{};
    for (int i = 0; i < 8; ++i) {
        if (i == 7) {
            R fc = f(c);
            ik += kWgk[7] * fc;
            ig += kWg[3] * fc;
            break;
        }
        R lo = f(c - h * kXgk[i]);
        R hi = f(c + h * kXgk[i]);
        ik += kWgk[i] * (lo + hi);
        if (i % 2 == 1) ig += kWg[i / 2] * (lo + hi);
    }
    value = ik * h;
    err = std::abs(value - ig * h);
}

}  // namespace detail_quad

// Adaptive Gauss-Kronrod on [a, b] for double- or complex-valued integrands.
// Splits the worst interval until the summed Kronrod-Gauss discrepancy drops
// below tol * max(1, |I|); throws QuadratureError with the achieved estimate
// if the interval budget runs out first.
template <typename F>
auto integrate(F&& f, double a, double b, double tol = 1e-10) {
    using R = decltype(f(0.5 * (a + b)));
    if (a == b) return R{};
    struct Seg {
        double a, b, err;
        R val;
    };
    std::vector<Seg> segs;
    auto make_seg = [&](double lo, double hi) {
        Seg s{lo, hi, 0.0, R{}};
        detail_quad::kronrod_cell(f, lo, hi, s.val, s.err);
        return s;
    };
    segs.push_back(make_seg(a, b));
    const std::size_t budget = 4096;
    for (;;) {
        R total{};
        double err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            err += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (err <= tol * std::max(1.0, std::abs(total))) return total;
        if (segs.size() >= budget)
            throw QuadratureError("adaptive quadrature exhausted its budget",
                                  err);
        Seg old = segs[worst];
        double mid = 0.5 * (old.a + old.b);
        segs[worst] = make_seg(old.a, mid);
        segs.push_back(make_seg(mid, old.b));
    }
}

// Integral over (0, inf) through y = u/(1-u); intended for integrands with
// (super)exponential decay.
template <typename F>
auto integrate_half_line(F&& f, double tol = 1e-10) {
    auto g = [&f](double u) {
        double w = 1.0 - u;
        return f(u / w) / (w * w);
    };
    return integrate(g, 0.0, 1.0, tol);
}

// integral_0^T phi(s) ds where phi(s) ~ s^p * smooth near 0, p > -1.
// The substitution s = T u^{1/(1+p)} absorbs the endpoint singularity.
template <typename F>
auto integrate_power_endpoint(F&& phi, double T, double p, double tol = 1e-10) {
    if (!(p > -1.0))
        throw InvalidArgumentError("integrate_power_endpoint: exponent <= -1");
    if (p == 0.0) return integrate(phi, 0.0, T, tol);
    const double q = 1.0 / (1.0 + p);
    auto g = [&phi, T, q](double u) {
        double s = T * std::pow(u, q);
        return phi(s) * (T * q * std::pow(u, q - 1.0));
    };
    return integrate(g, 0.0, 1.0, tol);
}

}  // namespace mlfrac
