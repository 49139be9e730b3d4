#pragma once

#include <vector>

#include "fluxlab/gaussian.hpp"

namespace fluxlab {

// A finite sum of canonical complex Gaussians.  This is what a wave packet
// looks like after any of the closed-form operations (evolution in time,
// Fourier transform, quadratic-phase multiplication), so the evaluation and
// norm helpers live here and are shared by all of them.
struct GaussianSum {
    std::vector<ComplexGaussian> terms;

    Complex value(const Vec3& x) const;
    CVec3 gradient(const Vec3& x) const;
    std::pair<Complex, CVec3> value_and_gradient(const Vec3& x) const;

    // L2 norm squared via pairwise closed-form overlaps.
    double norm_squared() const;
};

// Grid specification for the propagator-quadrature oracle.  The oracle
// integrates the free propagator against the initial data on a midpoint grid
// covering each component's support out to `padding_sigmas` standard
// deviations, and cross-checks the result against a grid with half the
// resolution (Richardson-style consistency check).
struct OracleGrid {
    int points_per_axis = 4096;
    double padding_sigmas = 10.0;
    double consistency_tol = 1e-8;  // relative |I_n - I_{n/2}| allowed
};

// Free-particle wave packet: a superposition of isotropic Gaussian
// components, each evolving in closed form under H = -Laplacian/2.
class WavePacket {
  public:
    // Validates all component fields (widths positive, everything finite,
    // at least one component); throws std::invalid_argument listing every
    // violation.
    explicit WavePacket(std::vector<GaussianComponent> components, double norm_tolerance = 1e-9);

    const std::vector<GaussianComponent>& components() const { return comps_; }
    double norm_tolerance() const { return norm_tol_; }

    // Returns a copy whose amplitudes are scaled by the single positive
    // constant that makes the L2 norm 1.  Throws std::invalid_argument if the
    // packet's norm vanishes (e.g. exactly cancelling components).
    WavePacket normalized() const;
    bool is_normalized() const;

    // ||psi_t||^2 from closed-form overlaps (t-independent up to roundoff).
    double norm_squared(double t = 0.0) const;

    // Closed-form evolved packet at time t (valid for any real t).
    GaussianSum at(double t) const;

    // Momentum representation: Fourier transform of the t = 0 packet.
    GaussianSum fourier_packet() const;

    Complex evaluate(const Vec3& x, double t) const;
    CVec3 gradient(const Vec3& x, double t) const;
    Complex fourier(const Vec3& k) const;

    // Large-time form  (i t)^(-3/2) exp(i|x|^2/(2t)) fourier(x/t);  t > 0.
    Complex asymptotic_form(const Vec3& x, double t) const;

    // Independent slow path for psi(x, t): numerical quadrature of the free
    // propagator against the initial data.  Exact factorization over axes is
    // used (the quadratic propagator phase and the isotropic Gaussian both
    // split into per-axis factors), so each component costs three 1-D
    // midpoint sums instead of one 3-D sum.  Throws std::domain_error for
    // t <= 0 and std::runtime_error if the two-resolution consistency check
    // fails.
    Complex evolve_by_quadrature_oracle(const Vec3& x, double t, const OracleGrid& grid = {}) const;

    // Radius K such that every component's momentum density is below its
    // peak by a factor exp(-nsigma^2/2) outside |k| <= K.
    double momentum_support_radius(double nsigma) const;

    // Radius enclosing every component's position density at time t out to
    // nsigma spread widths.
    double position_support_radius(double t, double nsigma) const;

    // Amplitude-weighted mean wavevector (used for default time budgets).
    Vec3 mean_wavevector() const;

  private:
    std::vector<GaussianComponent> comps_;
    double norm_tol_;
};

}  // namespace fluxlab
