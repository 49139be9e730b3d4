#pragma once

#include <vector>

#include "fluxlab/geometry.hpp"
#include "fluxlab/wavepacket.hpp"

namespace fluxlab {

// Probability with a quadrature error estimate attached.  `value` may stray
// outside [0, 1] by at most the error estimate.
struct ConeProbabilityResult {
    double value = 0.0;
    double quad_error = 0.0;
};

// Radial profile of the momentum density: rho(v) = v^2 * integral over the
// unit sphere of |fourier(v w)|^2 dOmega.  The angular integral of each
// pairwise Gaussian term reduces in closed form to 4 pi sinh(s v)/(s v), so
// evaluating rho costs O(components^2) and the cumulative distribution /
// quantiles are cheap.  Used for speed-cutoff policies (integration windows,
// tail bounds) and for the momentum median.
class RadialMomentumDensity {
  public:
    explicit RadialMomentumDensity(const WavePacket& packet);

    double density(double v) const;
    // P(|k| <= u), by adaptive radial quadrature of density().
    double cdf(double u) const;
    // Smallest u with cdf(u) >= p, by bisection.  p in (0, 1).
    double quantile(double p) const;
    // Radius beyond which the density is negligible.
    double support_radius() const { return support_; }

  private:
    struct Term {
        Complex coeff;  // conj(A_i) A_j
        Complex p;      // conj(a_i) + a_j
        Complex s;      // sqrt((conj(w_i) + w_j) . (conj(w_i) + w_j))
    };
    std::vector<Term> terms_;
    double support_ = 0.0;
};

// Momentum-cone probability: integral over the cone C of |fourier(k)|^2 d^3k,
// computed as an adaptive radial integral of the cap-quadrature angular
// integral.  The radial domain is truncated where every component's momentum
// density has fallen by more than exp(-72) relative to its peak.
ConeProbabilityResult momentum_cone_probability(const WavePacket& packet, const Cone& cone,
                                                int angular_order = 64, double radial_tol = 1e-11);

// Position-cone probability at time t: integral of |psi_t|^2 over
// {x in C : |x| > r_min}.  Same radial-times-angular scheme on the evolved
// packet; the radial domain extends to where the position density at time t
// is negligible.
ConeProbabilityResult position_cone_probability(const WavePacket& packet, const Cone& cone,
                                                double t, double r_min = 0.0,
                                                int angular_order = 64, double radial_tol = 1e-9);

// One row of a scattering-into-cones convergence scan.
struct SictRow {
    double t = 0.0;
    double position_prob = 0.0;
    double momentum_prob = 0.0;
    double gap = 0.0;  // |position_prob - momentum_prob|
};

// Evaluates position_cone_probability at each time (r_min fixed) against the
// constant momentum_cone_probability.  `times` must be positive and strictly
// increasing.
std::vector<SictRow> sict_convergence_scan(const WavePacket& packet, const Cone& cone,
                                           const std::vector<double>& times, double r_min = 0.0,
                                           int angular_order = 64);

}  // namespace fluxlab
