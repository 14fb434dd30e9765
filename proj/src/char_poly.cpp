#include "mlfrac/char_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlfrac {

CharPolynomial::CharPolynomial(std::vector<Complex> c) : coeffs(std::move(c)) {
    if (coeffs.size() < 2)
        throw InvalidArgumentError("CharPolynomial: degree >= 1 required");
    if (std::abs(coeffs.back()) == 0.0)
        throw InvalidArgumentError("CharPolynomial: leading coefficient is zero");
}

Complex CharPolynomial::eval(Complex x) const {
    Complex r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

Complex CharPolynomial::eval_derivative(Complex x) const {
    Complex r = 0.0;
    for (int k = degree(); k >= 1; --k)
        r = r * x + coeffs[k] * static_cast<double>(k);
    return r;
}

CharPolynomial CharPolynomial::monic() const {
    std::vector<Complex> c = coeffs;
    Complex lead = c.back();
    for (Complex& v : c) v /= lead;
    return CharPolynomial(std::move(c));
}

int RootSpectrum::degree() const {
    return std::accumulate(mults.begin(), mults.end(), 0);
}

bool RootSpectrum::all_simple() const {
    return std::all_of(mults.begin(), mults.end(),
                       [](int m) { return m == 1; });
}

void RootSpectrum::validate() const {
    if (roots.empty() || roots.size() != mults.size())
        throw InvalidArgumentError("RootSpectrum: roots/mults size mismatch");
    for (int m : mults)
        if (m < 1) throw InvalidArgumentError("RootSpectrum: multiplicity < 1");
    for (const Complex& r : roots)
        if (std::abs(r) == 0.0)
            throw ZeroRootError("RootSpectrum: zero root violates eta_j != 0");
}

std::vector<Complex> expand_from_roots(const RootSpectrum& spectrum) {
    std::vector<Complex> c{1.0};
    for (std::size_t j = 0; j < spectrum.roots.size(); ++j) {
        for (int m = 0; m < spectrum.mults[j]; ++m) {
            c.push_back(0.0);
            for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
                c[i] = c[i - 1] - spectrum.roots[j] * c[i];
            c[0] *= -spectrum.roots[j];
        }
    }
    return c;  // lambda_0 .. lambda_N, lambda_N = 1
}

namespace {

// Union-find clustering of approximants within cluster_radius.
RootSpectrum cluster_roots(const std::vector<Complex>& zs, double radius) {
    const int n = static_cast<int>(zs.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(zs[i] - zs[j]) < radius) parent[find(i)] = find(j);

    RootSpectrum spec;
    std::vector<int> rep;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        auto it = std::find(rep.begin(), rep.end(), r);
        if (it == rep.end()) {
            rep.push_back(r);
            spec.roots.push_back(0.0);
            spec.mults.push_back(0);
        }
    }
    for (int i = 0; i < n; ++i) {
        int idx = static_cast<int>(
            std::find(rep.begin(), rep.end(), find(i)) - rep.begin());
        spec.roots[idx] += zs[i];
        spec.mults[idx] += 1;
    }
    for (std::size_t j = 0; j < spec.roots.size(); ++j)
        spec.roots[j] /= static_cast<double>(spec.mults[j]);
    return spec;
}

}  // namespace

RootSpectrum find_roots(const CharPolynomial& p, double cluster_radius) {
    if (!(cluster_radius > 0.0))
        throw InvalidArgumentError("find_roots: cluster_radius must be > 0");
    const CharPolynomial q = p.monic();
    const int n = q.degree();

    // Starting points on a circle slightly above the Cauchy root bound,
    // with an angular offset so no starting point is real.
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(q.coeffs[k]));
    double r0 = 1.0 + bound;
    std::vector<Complex> z(n);
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * 3.14159265358979323846 *
                           (static_cast<double>(i) / n) +
                       0.43;
        z[i] = r0 * Complex(std::cos(theta), std::sin(theta));
    }

    const int max_iters = 200;
    double max_step = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iters; ++iter) {
        max_step = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex pv = q.eval(z[i]);
            if (pv == Complex{0.0, 0.0}) continue;
            Complex pd = q.eval_derivative(z[i]);
            if (pd == Complex{0.0, 0.0}) {
                z[i] += Complex(1e-6, 1e-6);
                max_step = std::numeric_limits<double>::infinity();
                continue;
            }
            Complex newton = pv / pd;
            Complex s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            Complex w = newton / (1.0 - newton * s);
            z[i] -= w;
            max_step = std::max(max_step, std::abs(w) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-14) break;
    }
    // Multiple roots stall above 1e-14; accept if the residual motion is well
    // inside the cluster radius, otherwise report failure.
    if (max_step >= 1e-14 && !(max_step < 0.25 * cluster_radius))
        throw NonConvergenceError("find_roots: Aberth iteration did not converge");

    // Newton polish only for approximants with no near neighbor; polishing a
    // cluster member would break the symmetric error cancellation of the
    // centroid.
    for (int i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (j != i) nearest = std::min(nearest, std::abs(z[i] - z[j]));
        if (nearest < 10.0 * cluster_radius) continue;
        for (int it = 0; it < 3; ++it) {
            Complex pd = q.eval_derivative(z[i]);
            if (pd == Complex{0.0, 0.0}) break;
            z[i] -= q.eval(z[i]) / pd;
        }
    }

    RootSpectrum spec = cluster_roots(z, cluster_radius);
    for (const Complex& root : spec.roots)
        if (std::abs(root) < cluster_radius)
            throw ZeroRootError("find_roots: root at zero (|eta| < cluster_radius)");

    // Reconstruction check: expanding the spectrum must reproduce the monic
    // coefficients to 1e-8 relative.
    std::vector<Complex> rec = expand_from_roots(spec);
    double scale = 0.0, err = 0.0;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        scale = std::max(scale, std::abs(q.coeffs[k]));
        err = std::max(err, std::abs(rec[k] - q.coeffs[k]));
    }
    if (!(err <= 1e-8 * scale))
        throw NonConvergenceError(
            "find_roots: reconstructed polynomial deviates by " +
            std::to_string(err / scale) + " relative");
    return spec;
}

std::vector<std::vector<Complex>> residue_weights(const RootSpectrum& spectrum) {
    spectrum.validate();
    if (!spectrum.all_simple())
        throw MultiplicityError(
            "residue_weights: requires all multiplicities equal to 1");
    const int N = static_cast<int>(spectrum.roots.size());
    std::vector<std::vector<Complex>> w(N, std::vector<Complex>(N));
    for (int h = 0; h < N; ++h) {
        Complex denom = 1.0;
        for (int j = 0; j < N; ++j)
            if (j != h) denom *= spectrum.roots[h] - spectrum.roots[j];
        Complex pow_eta = 1.0;  // eta_h^{k-1}, k starting at 1
        for (int k = 0; k < N; ++k) {
            w[h][k] = pow_eta / denom;
            pow_eta *= spectrum.roots[h];
        }
    }
    return w;
}

}  // namespace mlfrac
