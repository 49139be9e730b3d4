#include "fluxlab/gaussian.hpp"

#include <cmath>

namespace fluxlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Complex overlap(const ComplexGaussian& f, const ComplexGaussian& g) {
    const Complex p = std::conj(f.a) + g.a;  // Re p > 0
    const CVec3 q = conj(f.w) + g.w;
    const Complex q2 = dot(q, q);
    return std::conj(f.A) * g.A * std::pow(kPi / p, 1.5) * std::exp(q2 / (4.0 * p));
}

ComplexGaussian fourier_transform(const ComplexGaussian& f) {
    // integral exp(-a y^2 + (w - i k).y) = (pi/a)^(3/2) exp((w - i k)^2 / 4a);
    // expanding the square gives a canonical Gaussian in k.
    const Complex i(0.0, 1.0);
    ComplexGaussian out;
    out.a = 1.0 / (4.0 * f.a);
    out.w = (-i / (2.0 * f.a)) * f.w;
    const Complex w2 = dot(f.w, f.w);
    out.A = f.A * std::pow(2.0 * kPi, -1.5) * std::pow(kPi / f.a, 1.5) * std::exp(w2 / (4.0 * f.a));
    return out;
}

ComplexGaussian to_canonical(const GaussianComponent& c) {
    const Complex i(0.0, 1.0);
    const double s2 = c.width * c.width;
    ComplexGaussian out;
    out.a = 1.0 / (4.0 * s2);
    out.w = CVec3(c.center / (2.0 * s2)) + i * CVec3(c.wavevector);
    out.A = c.amplitude * std::pow(2.0 * kPi * s2, -0.75) *
            std::exp(-norm2(c.center) / (4.0 * s2) - i * dot(c.wavevector, c.center));
    return out;
}

ComplexGaussian evolve(const GaussianComponent& c, double t) {
    const Complex i(0.0, 1.0);
    const double s2 = c.width * c.width;
    const Complex S = s2 + i * (0.5 * t);
    const double k2 = norm2(c.wavevector);
    ComplexGaussian out;
    out.a = 1.0 / (4.0 * S);
    out.w = (1.0 / (2.0 * S)) * CVec3(c.center) + (i * s2 / S) * CVec3(c.wavevector);
    out.A = c.amplitude * std::pow(2.0 * kPi * s2, -0.75) * std::pow(s2 / S, 1.5) *
            std::exp(-norm2(c.center) / (4.0 * S) - i * (s2 / S) * dot(c.wavevector, c.center) +
                     (s2 * s2 / S) * k2 - s2 * k2);
    return out;
}

double spread_width(double sigma0, double t) {
    const double s2 = sigma0 * sigma0;
    return std::sqrt(s2 + t * t / (4.0 * s2));
}

}  // namespace fluxlab
