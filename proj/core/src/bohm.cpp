#include "fluxlab/bohm.hpp"

#include <cmath>
#include <thread>

#include "fluxlab/conescan.hpp"
#include "fluxlab/rng.hpp"

namespace fluxlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec3 bohm_velocity(const GaussianSum& state, const Vec3& x, double t_for_error,
                   double node_floor) {
    const auto [v, g] = state.value_and_gradient(x);
    const double d = std::norm(v);
    if (d < node_floor) throw NearNodeError(x, t_for_error, d);
    const Complex cv = std::conj(v);
    return Vec3{std::imag(cv * g.x), std::imag(cv * g.y), std::imag(cv * g.z)} / d;
}

Vec3 bohm_velocity(const WavePacket& packet, const Vec3& x, double t) {
    return bohm_velocity(packet.at(t), x, t);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order weights for the error estimate.
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct Field {
    const WavePacket& packet;
    double node_floor = 1e-300;
    Vec3 operator()(const Vec3& x, double t) const {
        return bohm_velocity(packet.at(t), x, t, node_floor);
    }
};

struct StepResult {
    Vec3 x;
    Vec3 v_end;
    double err;  // scaled error norm; accept if <= 1
};

StepResult dp45_step(const Field& f, const Vec3& x, double t, const Vec3& k1, double h,
                     const OdeOptions& o) {
    const Vec3 k2 = f(x + h * a21 * k1, t + c2 * h);
    const Vec3 k3 = f(x + h * (a31 * k1 + a32 * k2), t + c3 * h);
    const Vec3 k4 = f(x + h * (a41 * k1 + a42 * k2 + a43 * k3), t + c4 * h);
    const Vec3 k5 = f(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), t + c5 * h);
    const Vec3 k6 = f(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), t + h);
    const Vec3 x1 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec3 k7 = f(x1, t + h);  // FSAL
    const Vec3 errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    const double sx[3] = {std::abs(x.x) + std::abs(x1.x), std::abs(x.y) + std::abs(x1.y),
                          std::abs(x.z) + std::abs(x1.z)};
    const double ev[3] = {errv.x, errv.y, errv.z};
    for (int i = 0; i < 3; ++i) {
        const double sc = o.abs_tol + o.rel_tol * 0.5 * sx[i];
        err += (ev[i] / sc) * (ev[i] / sc);
    }
    return {x1, k7, std::sqrt(err / 3.0)};
}

}  // namespace

Trajectory integrate_trajectory(const WavePacket& packet, const Vec3& x0, double t0, double t1,
                                const OdeOptions& opts) {
    if (!(t1 >= t0)) throw std::invalid_argument("integrate_trajectory: need t1 >= t0");
    const Field field{packet, opts.node_floor};
    Trajectory traj;
    Vec3 x = x0;
    double t = t0;
    Vec3 v;
    try {
        v = field(x, t);
    } catch (const NearNodeError&) {
        traj.aborted = true;
        return traj;
    }
    traj.points.push_back({t, x, v});
    double h = std::min(opts.h_initial, t1 - t0);
    while (t < t1) {
        if (opts.sphere_radius > 0.0) {
            const double cap = 0.2 * opts.sphere_radius / std::max(norm(v), 1e-12);
            h = std::min(h, cap);
        }
        h = std::min({h, opts.h_max, t1 - t});
        if (h < opts.h_min) {
            traj.aborted = true;
            break;
        }
        StepResult s;
        try {
            s = dp45_step(field, x, t, v, h, opts);
        } catch (const NearNodeError&) {
            ++traj.rejected;
            h *= 0.5;
            continue;
        }
        if (s.err <= 1.0) {
            t += h;
            x = s.x;
            v = s.v_end;
            traj.points.push_back({t, x, v});
            ++traj.steps;
            const double grow = s.err > 0.0 ? 0.9 * std::pow(s.err, -0.2) : 5.0;
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            ++traj.rejected;
            h *= std::max(0.2, 0.9 * std::pow(s.err, -0.2));
        }
    }
    return traj;
}

namespace {

// Advance x from ta to tb with fixed-step classical RK4 (used only inside a
// single accepted step, where the error is far below the crossing tolerance).
Vec3 rk4_advance(const Field& f, Vec3 x, double ta, double tb, int substeps) {
    const double h = (tb - ta) / substeps;
    for (int i = 0; i < substeps; ++i) {
        const double t = ta + i * h;
        const Vec3 k1 = f(x, t);
        const Vec3 k2 = f(x + (0.5 * h) * k1, t + 0.5 * h);
        const Vec3 k3 = f(x + (0.5 * h) * k2, t + 0.5 * h);
        const Vec3 k4 = f(x + h * k3, t + h);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

}  // namespace

CrossingScan trace_crossings(const WavePacket& packet, const Vec3& x0, double R, double t_budget,
                             const OdeOptions& opts_in) {
    if (!(R > 0.0)) throw std::invalid_argument("trace_crossings: R must be positive");
    if (norm(x0) >= R)
        throw std::invalid_argument("trace_crossings: start point must be strictly inside the sphere");
    if (!(t_budget > 0.0)) throw std::invalid_argument("trace_crossings: t_budget must be positive");

    OdeOptions opts = opts_in;
    opts.sphere_radius = R;
    const Field field{packet, opts.node_floor};
    const double tol_r = 1e-6 * R;

    CrossingScan out;
    Vec3 x = x0;
    double t = 0.0;
    Vec3 v;
    try {
        v = field(x, t);
    } catch (const NearNodeError&) {
        out.aborted = true;
        return out;
    }
    double h = opts.h_initial;
    int ordinal = 0;
    while (t < t_budget) {
        const double cap = 0.2 * R / std::max(norm(v), 1e-12);
        h = std::min({h, cap, opts.h_max, t_budget - t});
        if (h < opts.h_min) {
            out.aborted = true;
            break;
        }
        StepResult s;
        try {
            s = dp45_step(field, x, t, v, h, opts);
        } catch (const NearNodeError&) {
            h *= 0.5;
            continue;
        }
        if (s.err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(s.err, -0.2));
            continue;
        }
        const double t_next = t + h;
        const double r_prev = norm(x);
        const double r_next = norm(s.x);
        if ((r_prev - R) * (r_next - R) < 0.0) {
            // Bisection on the crossing time; each probe re-integrates from
            // the live left state, so accuracy is set by RK4 on a shrinking
            // interval, not by an interpolant.
            double ta = t, tb = t_next;
            Vec3 xa = x, xb = s.x;
            const bool was_inside = r_prev < R;
            for (int it = 0; it < 80; ++it) {
                if (std::abs(norm(xa) - R) <= tol_r || std::abs(norm(xb) - R) <= tol_r) break;
                const double tm = 0.5 * (ta + tb);
                Vec3 xm;
                try {
                    xm = rk4_advance(field, xa, ta, tm, 4);
                } catch (const NearNodeError&) {
                    break;
                }
                if ((norm(xm) < R) == was_inside) {
                    ta = tm;
                    xa = xm;
                } else {
                    tb = tm;
                    xb = xm;
                }
            }
            const bool use_a = std::abs(norm(xa) - R) <= std::abs(norm(xb) - R);
            const double tc = use_a ? ta : tb;
            const Vec3 xc = use_a ? xa : xb;
            CrossingRecord rec;
            rec.time = tc;
            rec.exit_point = xc;
            rec.direction = was_inside ? +1 : -1;
            rec.ordinal = ++ordinal;
            out.crossings.push_back(rec);
        }
        t = t_next;
        x = s.x;
        v = s.v_end;
        const double grow = s.err > 0.0 ? 0.9 * std::pow(s.err, -0.2) : 5.0;
        h *= std::min(5.0, std::max(0.2, grow));
        if (norm(x) > 2.0 * R && dot(x, v) > 0.0) break;  // clearly escaped
    }
    out.final_time = t;
    out.final_radius = norm(x);
    return out;
}

std::optional<CrossingRecord> first_crossing(const WavePacket& packet, const Vec3& x0, double R,
                                             double t_budget, const OdeOptions& opts) {
    const CrossingScan scan = trace_crossings(packet, x0, R, t_budget, opts);
    if (scan.crossings.empty()) return std::nullopt;
    return scan.crossings.front();
}

std::vector<Vec3> sample_initial(const WavePacket& packet, std::size_t n, std::uint64_t seed) {
    if (!packet.is_normalized())
        throw std::invalid_argument("sample_initial: packet must be normalized");
    const auto& comps = packet.components();
    const GaussianSum state = packet.at(0.0);
    const std::size_t m = comps.size();

    // Mixture of the component position densities, amplitude-weighted.
    std::vector<double> cum(m);
    double wsum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        wsum += std::norm(comps[i].amplitude);
        cum[i] = wsum;
    }
    // Cauchy-Schwarz: |sum c_i phi_i|^2 <= m * sum |c_i|^2 |phi_i|^2, so the
    // mixture density scaled by m * wsum dominates |psi|^2.
    std::vector<Vec3> out(n);
    std::size_t proposals = 0, accepts = 0;
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng = CounterRng::substream(seed, i);
        for (;;) {
            ++proposals;
            if (proposals >= 10000 && accepts < proposals / 100)
                throw EnvelopeFailure(
                    "sample_initial: rejection acceptance below 1% after 10^4 proposals");
            const double u = rng.next_double() * wsum;
            std::size_t c = 0;
            while (c + 1 < m && u > cum[c]) ++c;
            const Vec3 x = comps[c].center + comps[c].width * rng.next_normal3();
            // envelope density (up to the common (2 pi)^{-3/2} factor handled below)
            double env = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double s2 = comps[j].width * comps[j].width;
                env += std::norm(comps[j].amplitude) * std::pow(2.0 * kPi * s2, -1.5) *
                       std::exp(-norm2(x - comps[j].center) / (2.0 * s2));
            }
            const double target = std::norm(state.value(x));
            const double accept_p = target / (double(m) * env);
            if (rng.next_double() < accept_p) {
                out[i] = x;
                ++accepts;
                break;
            }
        }
    }
    return out;
}

namespace {

struct TrajectoryOutcome {
    bool aborted = false;
    bool crossed = false;
    bool first_in_cap = false;
    bool multi = false;
    int cap_signed = 0;
    int cap_total = 0;
};

TrajectoryOutcome run_one(const WavePacket& packet, const Vec3& x0, double R, const Cone& cone,
                          double t_budget, const OdeOptions& opts) {
    TrajectoryOutcome o;
    // A sample landing on or outside the sphere (possible in principle for
    // small R) has no first exit from the inside; count it as a no-cross
    // rather than killing the worker.
    if (norm(x0) >= R) return o;
    const CrossingScan scan = trace_crossings(packet, x0, R, t_budget, opts);
    o.aborted = scan.aborted;
    o.crossed = !scan.crossings.empty();
    o.multi = scan.crossings.size() > 1;
    if (o.crossed) {
        const CrossingRecord& first = scan.crossings.front();
        o.first_in_cap = contains(cone, first.exit_point);
        for (const auto& c : scan.crossings) {
            if (contains(cone, c.exit_point)) {
                o.cap_signed += c.direction;
                o.cap_total += 1;
            }
        }
    }
    return o;
}

}  // namespace

EnsembleStats crossing_statistics(const WavePacket& packet, double R, const Cone& cone,
                                  std::size_t n, std::uint64_t seed, double t_budget, int workers,
                                  const OdeOptions& opts) {
    if (n < 100) throw std::invalid_argument("crossing_statistics: need n >= 100");
    if (t_budget <= 0.0) {
        double v_typ = norm(packet.mean_wavevector());
        if (v_typ < 1e-12) v_typ = RadialMomentumDensity(packet).quantile(0.5);
        t_budget = 4.0 * R / v_typ;
    }

    const std::vector<Vec3> starts = sample_initial(packet, n, seed);
    std::vector<TrajectoryOutcome> outcomes(n);

    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            outcomes[i] = run_one(packet, starts[i], R, cone, t_budget, opts);
    };
    if (workers <= 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = std::min(n, w * chunk);
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    EnsembleStats st;
    st.n = n;
    st.seed = seed;
    st.t_budget = t_budget;
    long signed_sum = 0, total_sum = 0;
    for (const auto& o : outcomes) {
        if (o.aborted) ++st.aborted;
        if (!o.crossed) ++st.no_cross;
        if (o.first_in_cap) ++st.first_cross_in_cap;
        if (o.multi) ++st.multi_crossers;
        signed_sum += o.cap_signed;
        total_sum += o.cap_total;
    }
    st.estimate = double(st.first_cross_in_cap) / double(n);
    st.ci95 = 1.96 * std::sqrt(st.estimate * (1.0 - st.estimate) / double(n));
    st.mean_signed_cap_crossings = double(signed_sum) / double(n);
    st.mean_total_cap_crossings = double(total_sum) / double(n);
    if (st.aborted * 100 > n)
        throw EnsembleQualityError("crossing_statistics: more than 1% of trajectories aborted");
    return st;
}

}  // namespace fluxlab
