#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fluxlab/geometry.hpp"
#include "fluxlab/wavepacket.hpp"

namespace fluxlab {

// Thrown when the guiding field is evaluated where |psi|^2 is numerically
// zero (at, or extremely close to, a node of the wave function).
class NearNodeError : public std::runtime_error {
  public:
    NearNodeError(const Vec3& where, double when, double density)
        : std::runtime_error("velocity field evaluated too close to a node"),
          x(where), t(when), psi2(density) {}
    Vec3 x;
    double t;
    double psi2;
};

// Guiding velocity  v = Im(grad psi / psi) = j / |psi|^2.
Vec3 bohm_velocity(const GaussianSum& state, const Vec3& x, double t_for_error = 0.0,
                   double node_floor = 1e-300);
Vec3 bohm_velocity(const WavePacket& packet, const Vec3& x, double t);

struct TrajectoryPoint {
    double t = 0.0;
    Vec3 x{};
    Vec3 v{};
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;  // accepted steps, including start
    int steps = 0;                        // accepted
    int rejected = 0;
    bool aborted = false;                 // stopped early (node / step underflow)
};

struct OdeOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double h_initial = 1e-3;
    double h_min = 1e-12;
    double h_max = 1.0;
    // If positive, step length is additionally capped by
    // 0.2 * sphere_radius / |v| so sphere crossings cannot be skipped.
    double sphere_radius = 0.0;
    double node_floor = 1e-300;  // |psi|^2 below this counts as "at a node"
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 4/5) integration of
// dX/dt = v(X, t) from (x0, t0) to t1.  Steps that land on a node are
// retried with half the step; if the step underflows the trajectory is
// returned with aborted = true.
Trajectory integrate_trajectory(const WavePacket& packet, const Vec3& x0, double t0, double t1,
                                const OdeOptions& opts = {});

struct CrossingRecord {
    double time = 0.0;
    Vec3 exit_point{};
    int direction = 0;  // +1 outward, -1 inward
    int ordinal = 0;    // 1 for the first crossing of this trajectory
};

// All crossings of the sphere |x| = R by the trajectory started at x0
// (|x0| < R required), in time order, until t_budget runs out or the
// trajectory has clearly escaped (|x| > 2R moving outward).  Crossing times
// are refined by bisection (re-integrating within the bracketing step) until
// | |X| - R | <= 1e-6 R.  A trajectory that aborts mid-flight reports the
// crossings found up to that point and sets `aborted`.
struct CrossingScan {
    std::vector<CrossingRecord> crossings;
    bool aborted = false;
    double final_time = 0.0;
    double final_radius = 0.0;
};
CrossingScan trace_crossings(const WavePacket& packet, const Vec3& x0, double R, double t_budget,
                             const OdeOptions& opts = {});

// First crossing only, or nullopt if the trajectory never reaches the sphere
// within t_budget.
std::optional<CrossingRecord> first_crossing(const WavePacket& packet, const Vec3& x0, double R,
                                             double t_budget, const OdeOptions& opts = {});

// Thrown by sample_initial when the rejection envelope stops accepting
// (acceptance below 1% after 10^4 proposals) -- indicates a packet whose
// interference structure the component-mixture envelope cannot cover.
class EnvelopeFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// n samples of |psi(., 0)|^2 by rejection from the amplitude-weighted
// component mixture (Cauchy-Schwarz envelope).  Sample i is produced by a
// counter-based substream keyed by (seed, i): results are independent of
// iteration order and reproducible across worker counts.  Requires a
// normalized packet.
std::vector<Vec3> sample_initial(const WavePacket& packet, std::size_t n, std::uint64_t seed);

// Thrown when more than 1% of an ensemble aborts.
class EnsembleQualityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EnsembleStats {
    std::size_t n = 0;
    std::size_t first_cross_in_cap = 0;  // first crossing exists and lies in the cone
    std::size_t no_cross = 0;            // never reached the sphere within budget
    std::size_t multi_crossers = 0;      // more than one sphere crossing
    std::size_t aborted = 0;
    double estimate = 0.0;   // first_cross_in_cap / n
    double ci95 = 0.0;       // 1.96 sqrt(estimate (1 - estimate) / n)
    double mean_signed_cap_crossings = 0.0;  // sum of +-1 over cap crossings, per trajectory
    double mean_total_cap_crossings = 0.0;   // number of cap crossings, per trajectory
    double t_budget = 0.0;
    std::uint64_t seed = 0;
};

// Monte-Carlo first-crossing statistics for the sphere |x| = R and the given
// cone, over n trajectories sampled from |psi_0|^2.  t_budget <= 0 selects
// the default 4 R / v_typical, where v_typical is the packet's mean momentum
// magnitude (or its momentum median if the mean vanishes).  Trajectories are
// independent; with workers > 1 they are processed in parallel with results
// merged in index order, so the outcome is identical for every worker count.
EnsembleStats crossing_statistics(const WavePacket& packet, double R, const Cone& cone,
                                  std::size_t n, std::uint64_t seed, double t_budget = -1.0,
                                  int workers = 1, const OdeOptions& opts = {});

}  // namespace fluxlab
