#include "fluxlab/flux.hpp"

#include <array>
#include <cmath>

#include "fluxlab/conescan.hpp"
#include "fluxlab/quadrature.hpp"

namespace fluxlab {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Signed/absolute cap integrals of j.n at one time, nodes weighted and
// summed pairwise.  `state` must be the packet evolved to the same time.
SurfaceFluxResult cap_flux(const GaussianSum& state, const SphereCap& cap,
                           const CapQuadrature& rule, std::vector<double>& s_terms,
                           std::vector<double>& a_terms) {
    const double r2 = cap.radius * cap.radius;
    s_terms.clear();
    a_terms.clear();
    for (std::size_t i = 0; i < rule.dir.size(); ++i) {
        const Vec3 x = cap.radius * rule.dir[i];
        const auto [v, g] = state.value_and_gradient(x);
        // j . n with n = dir: Im(conj(psi) dpsi/dn).
        const double jn = std::imag(std::conj(v) * dot(g, rule.dir[i]));
        const double w = rule.weight[i] * r2 * jn;
        s_terms.push_back(w);
        a_terms.push_back(std::abs(w));
    }
    return {pairwise_sum(s_terms), pairwise_sum(a_terms)};
}

// j0 . n on the cap: t^-4 R |fourier(R dir / t)|^2 (the asymptotic current
// is radial, so the normal component is its magnitude).
SurfaceFluxResult cap_asymptotic_flux(const GaussianSum& fourier_state, const SphereCap& cap,
                                      const CapQuadrature& rule, double t,
                                      std::vector<double>& s_terms) {
    const double r2 = cap.radius * cap.radius;
    const double scale = cap.radius / (t * t * t * t);
    s_terms.clear();
    for (std::size_t i = 0; i < rule.dir.size(); ++i) {
        const Vec3 k = (cap.radius / t) * rule.dir[i];
        s_terms.push_back(rule.weight[i] * r2 * scale * std::norm(fourier_state.value(k)));
    }
    const double s = pairwise_sum(s_terms);
    return {s, s};  // j0 . n >= 0 pointwise
}

}  // namespace

Vec3 flux_vector(const GaussianSum& state, const Vec3& x) {
    const auto [v, g] = state.value_and_gradient(x);
    const Complex cv = std::conj(v);
    return {std::imag(cv * g.x), std::imag(cv * g.y), std::imag(cv * g.z)};
}

Vec3 flux_vector(const WavePacket& packet, const Vec3& x, double t) {
    return flux_vector(packet.at(t), x);
}

Vec3 asymptotic_flux(const WavePacket& packet, const Vec3& x, double t) {
    if (!(t > 0.0)) throw std::domain_error("asymptotic_flux: t must be positive");
    const Vec3 v = x / t;
    return (std::norm(packet.fourier(v)) / (t * t * t)) * v;
}

SurfaceFluxResult surface_flux(const WavePacket& packet, const SphereCap& cap, double t,
                               int order) {
    const CapQuadrature rule = cap_quadrature(cap, order);
    std::vector<double> s_terms, a_terms;
    return cap_flux(packet.at(t), cap, rule, s_terms, a_terms);
}

SurfaceFluxResult asymptotic_surface_flux(const WavePacket& packet, const SphereCap& cap, double t,
                                          int order) {
    if (!(t > 0.0)) throw std::domain_error("asymptotic_surface_flux: t must be positive");
    const CapQuadrature rule = cap_quadrature(cap, order);
    const GaussianSum fp = packet.fourier_packet();
    std::vector<double> terms;
    return cap_asymptotic_flux(fp, cap, rule, t, terms);
}

FluxIntegralResult integrated_flux(const WavePacket& packet, const SphereCap& cap, double T,
                                   double epsilon_tail, int order, double time_tol) {
    if (!(T >= 0.0))
        throw std::domain_error("integrated_flux: T must be >= 0 (use finite_window_flux for "
                                "windows containing negative times)");
    if (!(epsilon_tail > 0.0) || !(epsilon_tail < 1.0))
        throw std::invalid_argument("integrated_flux: epsilon_tail must be in (0, 1)");

    const RadialMomentumDensity radial(packet);
    const double v_min = radial.quantile(epsilon_tail);
    const double t_max = cap.radius / v_min;

    FluxIntegralResult out;
    out.radius = cap.radius;
    out.t_lo = T;
    if (t_max <= T) {
        // Window closed before it opened: everything slower than radius/T is
        // already inside the requested tail.
        out.t_hi = T;
        out.tail_bound = radial.cdf(cap.radius / std::max(T, 1e-300));
        return out;
    }
    out.t_hi = t_max;
    out.tail_bound = radial.cdf(v_min);

    const CapQuadrature rule = cap_quadrature(cap, order);
    std::vector<double> s_terms, a_terms;
    auto f = [&](double t) {
        const SurfaceFluxResult r = cap_flux(packet.at(t), cap, rule, s_terms, a_terms);
        return std::array<double, 2>{r.signed_flux, r.absolute_flux};
    };
    try {
        const auto r = integrate_adaptive<2>(f, T, t_max, time_tol, 4096, 16);
        out.signed_flux = r.value[0];
        out.absolute_flux = r.value[1];
        out.quad_error = r.error;
    } catch (const QuadratureBudgetError& e) {
        out.signed_flux = e.partial[0];
        out.absolute_flux = e.partial[1];
        out.quad_error = e.error;
        throw FluxUnconverged("integrated_flux: time quadrature did not converge", out);
    }
    return out;
}

double asymptotic_integrated_flux(const WavePacket& packet, const SphereCap& cap, double T,
                                  int order, double radial_tol) {
    if (!(T > 0.0)) throw std::domain_error("asymptotic_integrated_flux: T must be positive");
    const GaussianSum fp = packet.fourier_packet();
    const CapQuadrature rule = cap_quadrature(make_cap(1.0, cap.cone), order);
    // Everything below depends on the geometry only through v_hi = radius/T
    // and the cone: same v_hi => identical quadrature => identical value.
    const double v_hi = std::min(cap.radius / T, packet.momentum_support_radius(12.0));
    std::vector<double> scratch;
    auto f = [&](double v) {
        scratch.clear();
        for (std::size_t i = 0; i < rule.dir.size(); ++i)
            scratch.push_back(rule.weight[i] * std::norm(fp.value(v * rule.dir[i])));
        return v * v * pairwise_sum(scratch);
    };
    return integrate_adaptive_scalar(f, 0.0, v_hi, radial_tol, 4096, 16).value[0];
}

double fas_distance(const WavePacket& packet, double R, double T, double epsilon_tail, int order,
                    double time_tol) {
    if (!(R > 0.0)) throw std::invalid_argument("fas_distance: R must be positive");
    if (!(T > 0.0)) throw std::domain_error("fas_distance: T must be positive");

    const RadialMomentumDensity radial(packet);
    const double v_min = radial.quantile(epsilon_tail);
    const double t_max = R / v_min;
    if (t_max <= T) return 0.0;

    const SphereCap sphere = make_cap(R, make_cone({0, 0, 1}, kPi));
    const CapQuadrature rule = cap_quadrature(sphere, order);
    const GaussianSum fp = packet.fourier_packet();
    const double r2 = R * R;
    std::vector<double> terms;
    terms.reserve(rule.dir.size());
    auto f = [&](double t) {
        const GaussianSum state = packet.at(t);
        const double scale = R / (t * t * t * t);
        terms.clear();
        for (std::size_t i = 0; i < rule.dir.size(); ++i) {
            const Vec3 x = R * rule.dir[i];
            const auto [v, g] = state.value_and_gradient(x);
            const double jn = std::imag(std::conj(v) * dot(g, rule.dir[i]));
            const double j0n = scale * std::norm(fp.value((R / t) * rule.dir[i]));
            terms.push_back(rule.weight[i] * r2 * std::abs(jn - j0n));
        }
        return pairwise_sum(terms);
    };
    return integrate_adaptive_scalar(f, T, t_max, time_tol, 4096, 16).value[0];
}

namespace {

// Gaussian sum representing  F[(exp(i|y|^2/(2t)) - 1) psi]:  each component
// transformed with its quadratic-phase-shifted parameter, minus the plain
// transform (amplitudes negated).
GaussianSum remainder_transform(const WavePacket& packet, double t) {
    GaussianSum out;
    out.terms.reserve(2 * packet.components().size());
    const Complex shift(0.0, -1.0 / (2.0 * t));
    for (const auto& c : packet.components()) {
        ComplexGaussian g = to_canonical(c);
        g.a += shift;  // multiply by exp(i|y|^2/(2t)); Re a unchanged
        out.terms.push_back(fourier_transform(g));
    }
    for (const auto& c : packet.components()) {
        ComplexGaussian g = fourier_transform(to_canonical(c));
        g.A = -g.A;
        out.terms.push_back(g);
    }
    return out;
}

}  // namespace

Complex remainder_f(const WavePacket& packet, const Vec3& v, double t) {
    if (!(t > 0.0)) throw std::domain_error("remainder_f: t must be positive");
    return remainder_transform(packet, t).value(v);
}

CVec3 remainder_g(const WavePacket& packet, const Vec3& v, double t) {
    if (!(t > 0.0)) throw std::domain_error("remainder_g: t must be positive");
    return remainder_transform(packet, t).gradient(v);
}

namespace {

// L1-type radial-angular integral  integral r^2 weight(r) <|psi|>_angle dr,
// refined in both directions until two successive refinements agree.
double l1_norm(const WavePacket& packet, int order, int moment) {
    const GaussianSum state = packet.at(0.0);
    const double r_max = packet.position_support_radius(0.0, 14.0);
    double previous = -1.0;
    for (int o = order; o <= 4 * order; o *= 2) {
        const CapQuadrature rule = cap_quadrature(make_cap(1.0, make_cone({0, 0, 1}, kPi)), o);
        std::vector<double> scratch;
        scratch.reserve(rule.dir.size());
        auto f = [&](double r) {
            scratch.clear();
            for (std::size_t i = 0; i < rule.dir.size(); ++i)
                scratch.push_back(rule.weight[i] * std::abs(state.value(r * rule.dir[i])));
            double shell = r * r * pairwise_sum(scratch);
            if (moment == 1) shell *= r;
            return shell;
        };
        const double value = integrate_adaptive_scalar(f, 0.0, r_max, 1e-11, 4096, 16).value[0];
        if (previous >= 0.0 && std::abs(value - previous) <= 1e-8 * std::max(1.0, value))
            return value;
        previous = value;
    }
    throw std::runtime_error("remainder_bounds: L1 quadrature did not stabilize under refinement");
}

}  // namespace

RemainderBounds remainder_bounds(const WavePacket& packet, int angular_order) {
    RemainderBounds out;
    out.l1_psi = l1_norm(packet, angular_order, 0);
    out.l1_ypsi = l1_norm(packet, angular_order, 1);
    const double pref = 2.0 * std::pow(2.0 * kPi, -1.5);
    out.c_f = pref * out.l1_psi;
    out.c_g = pref * out.l1_ypsi;

    // Fixed diagnostic grid: 26 lattice directions x speeds x times.
    std::vector<Vec3> dirs;
    for (int ix = -1; ix <= 1; ++ix)
        for (int iy = -1; iy <= 1; ++iy)
            for (int iz = -1; iz <= 1; ++iz) {
                if (ix == 0 && iy == 0 && iz == 0) continue;
                const Vec3 d{double(ix), double(iy), double(iz)};
                dirs.push_back(d / norm(d));
            }
    const double k_hi = packet.momentum_support_radius(6.0);
    std::vector<double> speeds;
    for (int i = 0; i <= 12; ++i) speeds.push_back(k_hi * i / 12.0);
    const std::vector<double> times = {0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 300.0, 1000.0};

    for (const double t : times) {
        const GaussianSum rem = remainder_transform(packet, t);
        for (const double s : speeds)
            for (const Vec3& d : dirs) {
                const Vec3 v = s * d;
                const auto [fv, gv] = rem.value_and_gradient(v);
                out.sup_f_sampled = std::max(out.sup_f_sampled, std::abs(fv));
                const double gnorm = std::sqrt(std::norm(gv.x) + std::norm(gv.y) + std::norm(gv.z));
                out.sup_g_sampled = std::max(out.sup_g_sampled, gnorm);
                ++out.samples;
            }
    }
    return out;
}

double finite_window_flux(const WavePacket& packet, double R, double t1, double t2, int order,
                          double time_tol) {
    if (!(R > 0.0)) throw std::invalid_argument("finite_window_flux: R must be positive");
    if (!(t1 <= t2)) throw std::invalid_argument("finite_window_flux: need t1 <= t2");
    if (t1 == t2) return 0.0;
    const SphereCap sphere = make_cap(R, make_cone({0, 0, 1}, kPi));
    const CapQuadrature rule = cap_quadrature(sphere, order);
    std::vector<double> s_terms, a_terms;
    auto f = [&](double t) {
        return cap_flux(packet.at(t), sphere, rule, s_terms, a_terms).absolute_flux;
    };
    return integrate_adaptive_scalar(f, t1, t2, time_tol, 4096, 16).value[0];
}

}  // namespace fluxlab
