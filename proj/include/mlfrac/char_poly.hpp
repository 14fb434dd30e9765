#pragma once

#include <complex>
#include <vector>

#include "mlfrac/errors.hpp"

namespace mlfrac {

using Complex = std::complex<double>;

// Characteristic polynomial sum_k lambda_k x^k with lambda_N != 0, N >= 1.
struct CharPolynomial {
    std::vector<Complex> coeffs;  // lambda_0 .. lambda_N

    explicit CharPolynomial(std::vector<Complex> c);
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex eval(Complex x) const;
    Complex eval_derivative(Complex x) const;
    // Same polynomial scaled to lambda_N = 1.
    CharPolynomial monic() const;
};

// Clustered nonzero roots eta_1..eta_M with algebraic multiplicities summing
// to the polynomial degree.
struct RootSpectrum {
    std::vector<Complex> roots;
    std::vector<int> mults;

    int degree() const;
    bool all_simple() const;
    void validate() const;
};

// Monic polynomial with the spectrum's roots, coefficients lambda_0..lambda_N.
std::vector<Complex> expand_from_roots(const RootSpectrum& spectrum);

// Aberth simultaneous iteration from perturbed-circle starting points, Newton
// polish on well-separated roots, then merging of approximants within
// cluster_radius into multiple roots. Verifies that the reconstructed
// polynomial matches the input to 1e-8 relative.
RootSpectrum find_roots(const CharPolynomial& p, double cluster_radius = 1e-7);

// Distinct-root residue weights w[h][k] = eta_h^{k-1} / prod_{j!=h}(eta_h-eta_j)
// for h = 1..N (rows), k = 1..N (columns); zero-based storage.
std::vector<std::vector<Complex>> residue_weights(const RootSpectrum& spectrum);

}  // namespace mlfrac
