#pragma once

#include <utility>

#include "fluxlab/vec.hpp"

namespace fluxlab {

// One Gaussian component of a wave packet, in physical parameters:
//
//   psi0(y) = amplitude * (2 pi width^2)^(-3/4)
//             * exp(-|y - center|^2 / (4 width^2)) * exp(i wavevector.(y - center))
//
// With |amplitude| = 1 this has unit L2 norm.  `width` is the per-axis
// standard deviation of the position density |psi0|^2; the momentum density
// correspondingly has std 1/(2 width) per axis.
struct GaussianComponent {
    Complex amplitude{1.0, 0.0};
    Vec3 center{};
    Vec3 wavevector{};
    double width = 1.0;
};

// Canonical complex Gaussian  A * exp(-a |x|^2 + w . x)  with Re a > 0.
// Everything the library does with packets (time evolution, Fourier
// transforms, overlaps, remainder diagnostics) is algebra on this form, so
// it is kept deliberately small and closed under those operations.
struct ComplexGaussian {
    Complex A{};
    Complex a{};
    CVec3 w{};

    Complex value(const Vec3& x) const {
        return A * std::exp(-a * norm2(x) + dot(w, x));
    }

    // Returns {value, gradient}; gradient = (w - 2 a x) * value.
    std::pair<Complex, CVec3> value_and_gradient(const Vec3& x) const {
        const Complex v = value(x);
        const Complex s = -2.0 * a;
        CVec3 g{w.x + s * x.x, w.y + s * x.y, w.z + s * x.z};
        return {v, g *= v};
    }
};

// L2 inner product  integral conj(f) g d^3x  (finite because Re a > 0 for
// both).  The w^2 in the exponent is the unconjugated dot product.
Complex overlap(const ComplexGaussian& f, const ComplexGaussian& g);

// Fourier transform with the unitary convention
//   F(k) = (2 pi)^(-3/2) integral exp(-i k.y) f(y) d^3y,
// which is again a canonical Gaussian in k.
ComplexGaussian fourier_transform(const ComplexGaussian& f);

// Canonical form of a component at t = 0.
ComplexGaussian to_canonical(const GaussianComponent& c);

// Canonical form of a component after free evolution by time t (Hamiltonian
// -Laplacian/2, i.e. hbar = m = 1).  Writing S = width^2 + i t / 2:
//   a = 1/(4 S),  w = center/(2 S) + i width^2 wavevector / S,
//   A = amplitude (2 pi width^2)^(-3/4) (width^2 / S)^(3/2)
//       * exp(-|center|^2/(4S) - i width^2 wavevector.center / S
//             + width^4 |wavevector|^2 / S - width^2 |wavevector|^2).
// S stays in the right half-plane for every real t, so the principal branch
// of (width^2/S)^(3/2) is continuous in t and the formula is valid for
// negative times as well.
ComplexGaussian evolve(const GaussianComponent& c, double t);

// Envelope standard deviation per axis of |psi_t|^2 for a component of
// initial width sigma0:  sigma_t = sqrt(sigma0^2 + t^2 / (4 sigma0^2)).
double spread_width(double sigma0, double t);

}  // namespace fluxlab
