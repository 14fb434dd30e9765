#pragma once

#include <complex>
#include <functional>
#include <span>

#include "mlfrac/cauchy_solver.hpp"

namespace mlfrac {

// Laplace-domain solution
//   G(mu) = [sum_{l=1}^{ceil(nu N)} f_{l-1} sum_{k=k_{l-1}}^N lambda_k mu^{nu k-l}
//            + L(g)(mu)] / sum_k lambda_k mu^{nu k},
// with mu^nu on the principal branch. Throws PoleError when the evaluation
// point sits on (or numerically at) a denominator zero.
Complex laplace_transform_solution(const CauchyProblem& p, Complex mu);

// Fixed-Talbot numerical inversion at t > 0. `nodes` points are placed on the
// full contour; the result is accepted only if doubling the node count moves
// it by less than tol * max(1, |value|).
Complex invert_laplace(const std::function<Complex(Complex)>& f, double t,
                       int nodes = 48, double tol = 1e-8);

// Dzherbashyan-Caputo derivative of order nu at t = n h via the
// Grunwald-Letnikov scheme applied to f minus its Maclaurin polynomial of
// degree ceil(nu)-1 (built from init_derivs); first-order accurate in h.
Complex caputo_derivative_numeric(const std::function<Complex(double)>& f,
                                  double nu, double t, double h,
                                  std::span<const Complex> init_derivs);

// integral_0^t f(t-s) g(s) ds by adaptive quadrature; f_exponent/g_exponent
// declare endpoint power behavior (f ~ x^a, g ~ x^b near x = 0, a,b > -1).
Complex convolve_numeric(const std::function<Complex(double)>& f,
                         const std::function<Complex(double)>& g, double t,
                         double f_exponent = 0.0, double g_exponent = 0.0,
                         double tol = 1e-10);

}  // namespace mlfrac
