#pragma once

#include <stdexcept>

#include "fluxlab/geometry.hpp"
#include "fluxlab/wavepacket.hpp"

namespace fluxlab {

// Quantum probability current  j = Im(conj(psi) grad psi)  (hbar = m = 1).
Vec3 flux_vector(const GaussianSum& state, const Vec3& x);
Vec3 flux_vector(const WavePacket& packet, const Vec3& x, double t);

// Large-time current  j0(x, t) = t^-3 |fourier(x/t)|^2 (x/t):  the current of
// the asymptotic form, exactly radial by construction.  Requires t > 0.
Vec3 asymptotic_flux(const WavePacket& packet, const Vec3& x, double t);

// Signed and absolute flux of a vector field through a spherical cap at one
// instant:  integral of j.n dsigma  and  integral of |j.n| dsigma.
struct SurfaceFluxResult {
    double signed_flux = 0.0;
    double absolute_flux = 0.0;
};
SurfaceFluxResult surface_flux(const WavePacket& packet, const SphereCap& cap, double t,
                               int order = 64);
// Same integrals for the asymptotic current (t > 0); used to compare the
// time-domain and velocity-domain routes to the asymptotic flux integral.
SurfaceFluxResult asymptotic_surface_flux(const WavePacket& packet, const SphereCap& cap, double t,
                                          int order = 64);

struct FluxIntegralResult {
    double signed_flux = 0.0;
    double absolute_flux = 0.0;
    double radius = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;       // upper end of the integration window actually used
    double tail_bound = 0.0; // momentum mass slower than radius / t_hi
    double quad_error = 0.0; // time-quadrature error estimate
};

// Thrown when a time integral cannot reach its tolerance within the segment
// budget; carries the partial result.
class FluxUnconverged : public std::runtime_error {
  public:
    FluxUnconverged(std::string what, FluxIntegralResult partial_result)
        : std::runtime_error(std::move(what)), partial(partial_result) {}
    FluxIntegralResult partial;
};

// Time-integrated flux through a cap over [T, T_max], with T_max chosen from
// the packet's momentum distribution: T_max = radius / v_min where the
// momentum mass below speed v_min is epsilon_tail.  The neglected tail of
// the time integral is controlled by that momentum mass, reported as
// tail_bound.  Requires T >= 0 (windows with negative times are the job of
// finite_window_flux).
FluxIntegralResult integrated_flux(const WavePacket& packet, const SphereCap& cap, double T,
                                   double epsilon_tail = 1e-6, int order = 64,
                                   double time_tol = 1e-7);

// integral_T^infinity dt integral_cap j0 . n dsigma, computed in the
// velocity variable v = radius/t:
//   integral_0^{radius/T} dv v^2 integral_cap |fourier(v w)|^2 dOmega(w).
// Depends on the cap only through radius/T and the cone, so fixed
// radius/T gives bit-identical results for every radius.  Requires T > 0.
double asymptotic_integrated_flux(const WavePacket& packet, const SphereCap& cap, double T,
                                  int order = 64, double radial_tol = 1e-10);

// L1 distance between the true and asymptotic currents on the full sphere
// of radius R, integrated over [T, T_max]:
//   integral_T^{T_max} dt integral_{|x|=R} |(j - j0) . n| dsigma.
// T_max follows the same epsilon_tail policy as integrated_flux.  T > 0.
double fas_distance(const WavePacket& packet, double R, double T, double epsilon_tail = 1e-8,
                    int order = 64, double time_tol = 1e-8);

// Fourier-side remainder of the large-time expansion and its v-gradient:
//   f(v, t) = (2 pi)^(-3/2) integral exp(-i v.y) (exp(i|y|^2/(2t)) - 1) psi(y) d^3y
// evaluated in closed form (the quadratic phase shifts the Gaussian
// parameter a by -i/(2t)).  g = grad_v f.  Requires t > 0.
Complex remainder_f(const WavePacket& packet, const Vec3& v, double t);
CVec3 remainder_g(const WavePacket& packet, const Vec3& v, double t);

// Uniform-in-time bounds on f and g:
//   |f| <= 2 (2 pi)^(-3/2) ||psi||_L1,   |g| <= 2 (2 pi)^(-3/2) || |y| psi ||_L1,
// with the L1 norms computed by self-refining radial x angular quadrature.
// sup_f / sup_g are sampled suprema of |f|, |g| over a fixed grid of 26
// lattice directions, speeds up to the momentum support radius, and times
// spanning [0.2, 1000].
struct RemainderBounds {
    double l1_psi = 0.0;      // ||psi||_L1
    double l1_ypsi = 0.0;     // || |y| psi(y) ||_L1
    double c_f = 0.0;
    double c_g = 0.0;
    double sup_f_sampled = 0.0;
    double sup_g_sampled = 0.0;
    int samples = 0;
};
RemainderBounds remainder_bounds(const WavePacket& packet, int angular_order = 48);

// Absolute flux through the full sphere of radius R over a finite window
// [t1, t2] (any real endpoints, t1 <= t2):
//   integral_{t1}^{t2} dt integral_{|x|=R} |j . n| dsigma.
double finite_window_flux(const WavePacket& packet, double R, double t1, double t2,
                          int order = 64, double time_tol = 1e-9);

}  // namespace fluxlab
