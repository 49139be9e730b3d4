#include "fluxlab/conescan.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxlab/quadrature.hpp"

namespace fluxlab {

namespace {
constexpr double kPi = 3.14159265358979323846;

// sinh(z)/z, stable near z = 0.
Complex sinch(Complex z) {
    if (std::abs(z) < 1e-3) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
    }
    return std::sinh(z) / z;
}

// v^2 * sum_i w_i |state(v * dir_i)|^2 with deterministic pairwise summation.
double radial_shell_integrand(const GaussianSum& state, const CapQuadrature& rule, double v,
                              std::vector<double>& scratch) {
    scratch.clear();
    for (std::size_t i = 0; i < rule.dir.size(); ++i)
        scratch.push_back(rule.weight[i] * std::norm(state.value(v * rule.dir[i])));
    return v * v * pairwise_sum(scratch);
}

}  // namespace

RadialMomentumDensity::RadialMomentumDensity(const WavePacket& packet) {
    const GaussianSum fp = packet.fourier_packet();
    terms_.reserve(fp.terms.size() * fp.terms.size());
    for (const auto& gi : fp.terms)
        for (const auto& gj : fp.terms) {
            Term t;
            t.coeff = std::conj(gi.A) * gj.A;
            t.p = std::conj(gi.a) + gj.a;
            const CVec3 q = conj(gi.w) + gj.w;
            t.s = std::sqrt(dot(q, q));
            terms_.push_back(t);
        }
    support_ = packet.momentum_support_radius(12.0);
}

double RadialMomentumDensity::density(double v) const {
    Complex s{};
    for (const auto& t : terms_) s += t.coeff * std::exp(-t.p * (v * v)) * sinch(t.s * v);
    // Hermitian pair structure: the imaginary parts cancel.
    return 4.0 * kPi * v * v * s.real();
}

double RadialMomentumDensity::cdf(double u) const {
    if (u <= 0.0) return 0.0;
    const double hi = std::min(u, support_);
    auto f = [this](double v) { return density(v); };
    return integrate_adaptive_scalar(f, 0.0, hi, 1e-13, 4096, 16).value[0];
}

double RadialMomentumDensity::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("RadialMomentumDensity::quantile: p must be in (0, 1)");
    double lo = 0.0, hi = support_;
    const double target = p * cdf(support_);
    for (int it = 0; it < 200 && hi - lo > 1e-12 * support_; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ConeProbabilityResult momentum_cone_probability(const WavePacket& packet, const Cone& cone,
                                                int angular_order, double radial_tol) {
    const GaussianSum fp = packet.fourier_packet();
    const CapQuadrature rule = cap_quadrature(make_cap(1.0, cone), angular_order);
    const double k_max = packet.momentum_support_radius(12.0);
    std::vector<double> scratch;
    scratch.reserve(rule.dir.size());
    auto f = [&](double v) { return radial_shell_integrand(fp, rule, v, scratch); };
    const auto r = integrate_adaptive_scalar(f, 0.0, k_max, radial_tol, 4096, 16);
    return {r.value[0], r.error};
}

ConeProbabilityResult position_cone_probability(const WavePacket& packet, const Cone& cone,
                                                double t, double r_min, int angular_order,
                                                double radial_tol) {
    if (r_min < 0.0)
        throw std::invalid_argument("position_cone_probability: r_min must be >= 0");
    const GaussianSum state = packet.at(t);
    const CapQuadrature rule = cap_quadrature(make_cap(1.0, cone), angular_order);
    const double r_max = packet.position_support_radius(t, 14.0);
    if (r_max <= r_min) return {0.0, 0.0};
    std::vector<double> scratch;
    scratch.reserve(rule.dir.size());
    auto f = [&](double r) { return radial_shell_integrand(state, rule, r, scratch); };
    const auto res = integrate_adaptive_scalar(f, r_min, r_max, radial_tol, 4096, 16);
    return {res.value[0], res.error};
}

std::vector<SictRow> sict_convergence_scan(const WavePacket& packet, const Cone& cone,
                                           const std::vector<double>& times, double r_min,
                                           int angular_order) {
    if (times.empty())
        throw std::invalid_argument("sict_convergence_scan: need at least one time");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0))
            throw std::invalid_argument("sict_convergence_scan: times must be positive");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("sict_convergence_scan: times must be strictly increasing");
    }
    const ConeProbabilityResult mom = momentum_cone_probability(packet, cone, angular_order);
    std::vector<SictRow> rows;
    rows.reserve(times.size());
    for (const double t : times) {
        const ConeProbabilityResult pos =
            position_cone_probability(packet, cone, t, r_min, angular_order);
        rows.push_back({t, pos.value, mom.value, std::abs(pos.value - mom.value)});
    }
    return rows;
}

}  // namespace fluxlab
