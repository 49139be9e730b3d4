#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fluxlab/conescan.hpp"
#include "fluxlab/flux.hpp"
#include "oracles.hpp"

using namespace fluxlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

WavePacket forward_packet() {
    GaussianComponent g;
    g.width = 1.0;
    g.wavevector = {0.0, 0.0, 2.0};
    return WavePacket({g});
}

WavePacket pair_packet() {
    GaussianComponent g1;
    g1.amplitude = std::sqrt(0.5);
    g1.width = 1.0;
    g1.wavevector = {0.0, 0.0, 2.0};
    GaussianComponent g2;
    g2.amplitude = std::sqrt(0.5) * std::exp(Complex(0.0, kPi / 4.0));
    g2.width = 0.7;
    g2.center = {1.0, 0.0, 0.0};
    g2.wavevector = {1.5, 0.0, 1.5};
    return WavePacket({g1, g2}).normalized();
}

// Plain midpoint Riemann sum of the (signed or absolute) current through a
// cap; deliberately independent of the library's Gauss-Legendre cap rule.
double riemann_cap_flux(const WavePacket& psi, const SphereCap& cap, double t, int n_theta,
                        int n_phi, bool absolute) {
    const Frame fr = rotate_to_axis(cap.cone);
    const double h_th = cap.cone.half_angle / n_theta;
    const double h_ph = 2.0 * kPi / n_phi;
    double s = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double th = (i + 0.5) * h_th;
        for (int j = 0; j < n_phi; ++j) {
            const double ph = (j + 0.5) * h_ph;
            const Vec3 dir = fr.to_world(
                {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
            const double jn = dot(flux_vector(psi, cap.radius * dir, t), dir);
            s += (absolute ? std::abs(jn) : jn) * std::sin(th) * h_th * h_ph;
        }
    }
    return cap.radius * cap.radius * s;
}

}  // namespace

TEST_SUITE_BEGIN("flux");

TEST_CASE("current agrees with its finite-difference definition") {
    const WavePacket psi = pair_packet();
    const Vec3 xs[] = {{0.5, -0.2, 1.0}, {2.0, 1.0, 3.0}};
    for (const Vec3& x : xs) {
        for (const double t : {0.0, 1.5}) {
            const Vec3 j = flux_vector(psi, x, t);
            const Complex val = psi.evaluate(x, t);
            const CVec3 fd = oracles::fd_gradient(psi, x, t);
            const Vec3 j_fd = imag(std::conj(val) * fd);
            CHECK(norm(j - j_fd) < 1e-8);
        }
    }
}

TEST_CASE("spreading Gaussian at rest has the exact radial current") {
    GaussianComponent g;
    g.width = 0.8;
    const WavePacket psi({g});
    // v(x, t) = x t / (4 sigma^4 + t^2), j = |psi|^2 v.
    const double sigma = g.width;
    for (const double t : {-2.0, 0.5, 3.0}) {
        for (const Vec3& x : {Vec3{1.0, 0.0, 0.0}, Vec3{0.4, -0.7, 1.1}}) {
            const Vec3 j = flux_vector(psi, x, t);
            const double dens = std::norm(psi.evaluate(x, t));
            const Vec3 expect =
                x * (t / (4.0 * sigma * sigma * sigma * sigma + t * t)) * dens;
            CHECK(norm(j - expect) < 1e-12);
        }
    }
}

TEST_CASE("cap surface flux matches a dense Riemann sum") {
    const WavePacket psi = pair_packet();
    const SphereCap cap = make_cap(6.0, make_cone({0.2, 0.1, 1.0}, 0.6));
    for (const double t : {1.0, 3.0}) {
        const SurfaceFluxResult r = surface_flux(psi, cap, t, 48);
        const double signed_mid = riemann_cap_flux(psi, cap, t, 400, 400, false);
        const double abs_mid = riemann_cap_flux(psi, cap, t, 400, 400, true);
        CHECK(r.signed_flux == doctest::Approx(signed_mid).epsilon(1e-4));
        CHECK(r.absolute_flux == doctest::Approx(abs_mid).epsilon(1e-4));
        CHECK(r.absolute_flux >= std::abs(r.signed_flux) - 1e-14);
    }
}

TEST_CASE("surface flux is deterministic") {
    const WavePacket psi = pair_packet();
    const SphereCap cap = make_cap(9.0, make_cone({0, 0, 1}, 0.5));
    const SurfaceFluxResult a = surface_flux(psi, cap, 4.0, 64);
    const SurfaceFluxResult b = surface_flux(psi, cap, 4.0, 64);
    CHECK(a.signed_flux == b.signed_flux);  // bit identical
    CHECK(a.absolute_flux == b.absolute_flux);
}

TEST_CASE("late-time cap flux approaches the asymptotic-current flux") {
    const WavePacket psi = forward_packet();
    const Cone cone = make_cone({0, 0, 1}, 0.5);
    // Keep R/t ~ packet speed so the flux is not exponentially small.
    for (const double t : {10.0, 30.0}) {
        const SphereCap cap = make_cap(2.0 * t, cone);
        const SurfaceFluxResult exact = surface_flux(psi, cap, t, 48);
        const SurfaceFluxResult asym = asymptotic_surface_flux(psi, cap, t, 48);
        CHECK(asym.signed_flux == doctest::Approx(asym.absolute_flux).epsilon(1e-14));
        CHECK(exact.signed_flux == doctest::Approx(asym.signed_flux).epsilon(10.0 / t));
    }
}

TEST_CASE("time-integrated asymptotic flux through the full sphere is the momentum mass") {
    const WavePacket psi = pair_packet();
    const SphereCap cap = make_cap(10.0, make_cone({0, 0, 1}, kPi));
    const double T = 8.0;
    const double lib = asymptotic_integrated_flux(psi, cap, T, 48, 1e-11);
    // Independent spherical rule: momentum mass below speed R/T.
    const double oracle = oracles::radial_angular_momentum_norm(psi, cap.radius / T);
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("time-integrated asymptotic flux depends only on radius/T and the cone") {
    const WavePacket psi = pair_packet();
    const Cone cone = make_cone({0.1, -0.2, 1.0}, 0.7);
    const double a = asymptotic_integrated_flux(psi, make_cap(10.0, cone), 5.0, 48);
    const double b = asymptotic_integrated_flux(psi, make_cap(20.0, cone), 10.0, 48);
    const double c = asymptotic_integrated_flux(psi, make_cap(35.0, cone), 17.5, 48);
    CHECK(a == b);  // bit identical by construction
    CHECK(a == c);
}

TEST_CASE("integrated flux over [0, infinity) approximates the momentum-cone mass") {
    const WavePacket psi = forward_packet();
    const Cone cone = make_cone({0, 0, 1}, 0.6);
    const SphereCap cap = make_cap(15.0, cone);
    const FluxIntegralResult r = integrated_flux(psi, cap, 0.0, 1e-6, 48, 1e-7);
    CHECK(r.radius == 15.0);
    CHECK(r.t_lo == 0.0);
    CHECK(r.t_hi > r.t_lo);
    CHECK(r.tail_bound == doctest::Approx(1e-6).epsilon(0.5));
    CHECK(r.absolute_flux >= std::abs(r.signed_flux) - 1e-12);
    const ConeProbabilityResult p = momentum_cone_probability(psi, cone, 48);
    // Corrections decay with radius; at R = 15 sigma they sit at the
    // percent level.
    CHECK(r.signed_flux == doctest::Approx(p.value).epsilon(2e-2));
    CHECK(r.quad_error < 1e-5);
}

TEST_CASE("integrated flux fails loudly when the tolerance is unreachable") {
    const WavePacket psi = forward_packet();
    const SphereCap cap = make_cap(8.0, make_cone({0, 0, 1}, 0.6));
    CHECK_THROWS_AS((void)integrated_flux(psi, cap, 0.0, 1e-6, 8, 1e-19), FluxUnconverged);
    try {
        (void)integrated_flux(psi, cap, 0.0, 1e-6, 8, 1e-19);
    } catch (const FluxUnconverged& e) {
        // Partial result is still physically sensible.
        CHECK(e.partial.signed_flux > 0.5);
        CHECK(e.partial.signed_flux < 1.1);
        CHECK(e.partial.quad_error > 0.0);
    }
}

TEST_CASE("integrated flux rejects negative start times") {
    const WavePacket psi = forward_packet();
    const SphereCap cap = make_cap(8.0, make_cone({0, 0, 1}, 0.6));
    CHECK_THROWS_AS((void)integrated_flux(psi, cap, -1.0), std::domain_error);
    CHECK_THROWS_AS((void)integrated_flux(psi, cap, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("finite-window absolute flux: window monotonicity and edge cases") {
    const WavePacket psi = pair_packet();
    const double R = 5.0;
    const double wide = finite_window_flux(psi, R, -1.0, 3.0, 32, 1e-8);
    const double narrow = finite_window_flux(psi, R, 0.0, 2.0, 32, 1e-8);
    CHECK(wide >= narrow - 1e-10);
    CHECK(narrow > 0.0);
    CHECK(finite_window_flux(psi, R, 1.5, 1.5) == 0.0);
    CHECK_THROWS_AS((void)finite_window_flux(psi, R, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)finite_window_flux(psi, 0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("large-time remainder matches a brute-force oscillatory integral") {
    GaussianComponent g;
    g.center = {0.3, -0.2, 0.5};
    g.wavevector = {1.0, 0.5, 1.2};
    g.width = 1.0;
    const WavePacket psi({g});
    const Vec3 v{0.8, -0.3, 1.1};
    const double t = 2.0;
    const Complex closed = remainder_f(psi, v, t);

    // (2 pi)^(-3/2) integral exp(-i v.y) (exp(i|y|^2/(2t)) - 1) psi(y) d^3y
    // on a 128^3 midpoint grid.
    const double half = 11.0;
    const int n = 128;
    const double h = 2.0 * half / n;
    Complex sum = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const double yx = -half + (ix + 0.5) * h;
        for (int iy = 0; iy < n; ++iy) {
            const double yy = -half + (iy + 0.5) * h;
            for (int iz = 0; iz < n; ++iz) {
                const Vec3 y{yx, yy, -half + (iz + 0.5) * h};
                const Complex phase =
                    std::exp(Complex(0.0, norm2(y) / (2.0 * t))) - 1.0;
                const Complex kernel = std::exp(Complex(0.0, -dot(v, y)));
                sum += kernel * phase * psi.evaluate(y, 0.0);
            }
        }
    }
    sum *= h * h * h * std::pow(2.0 * kPi, -1.5);
    CHECK(std::abs(closed - sum) < 1e-8);
}

TEST_CASE("remainder gradient matches finite differences in v") {
    const WavePacket psi = pair_packet();
    const Vec3 v{0.4, 0.9, -0.2};
    const double t = 3.0;
    const CVec3 g = remainder_g(psi, v, t);
    const double h = 1e-5;
    const Complex dx =
        (remainder_f(psi, v + Vec3{h, 0, 0}, t) - remainder_f(psi, v - Vec3{h, 0, 0}, t)) /
        (2.0 * h);
    const Complex dy =
        (remainder_f(psi, v + Vec3{0, h, 0}, t) - remainder_f(psi, v - Vec3{0, h, 0}, t)) /
        (2.0 * h);
    const Complex dz =
        (remainder_f(psi, v + Vec3{0, 0, h}, t) - remainder_f(psi, v - Vec3{0, 0, h}, t)) /
        (2.0 * h);
    CHECK(std::abs(g.x - dx) < 1e-7);
    CHECK(std::abs(g.y - dy) < 1e-7);
    CHECK(std::abs(g.z - dz) < 1e-7);
}

TEST_CASE("remainder limits: vanishes at late time, cancels the transform at small time") {
    const WavePacket psi = pair_packet();
    const Vec3 v{0.5, 0.2, 1.4};
    CHECK(std::abs(remainder_f(psi, v, 1e7)) < 1e-6);
    // As t -> 0+ the quadratic phase dephases the packet completely and
    // f -> -fourier(v).
    CHECK(std::abs(remainder_f(psi, v, 1e-9) + psi.fourier(v)) < 1e-6);
    CHECK_THROWS_AS((void)remainder_f(psi, v, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)remainder_g(psi, v, -1.0), std::domain_error);
}

TEST_CASE("remainder bounds: closed-form L1 norms and sampled suprema") {
    GaussianComponent g;
    g.width = 1.25;
    g.wavevector = {0.0, 0.0, 1.0};
    const WavePacket psi({g});
    const RemainderBounds b = remainder_bounds(psi, 48);
    const double sigma = g.width;
    const double l1 = std::pow(8.0 * kPi * sigma * sigma, 0.75);
    const double l1y = 32.0 * kPi * std::pow(sigma, 4) * std::pow(2.0 * kPi * sigma * sigma, -0.75);
    CHECK(b.l1_psi == doctest::Approx(l1).epsilon(1e-8));
    CHECK(b.l1_ypsi == doctest::Approx(l1y).epsilon(1e-8));
    CHECK(b.c_f == doctest::Approx(2.0 * std::pow(2.0 * kPi, -1.5) * l1).epsilon(1e-8));
    CHECK(b.c_g == doctest::Approx(2.0 * std::pow(2.0 * kPi, -1.5) * l1y).epsilon(1e-8));
    CHECK(b.samples > 1000);
    CHECK(b.sup_f_sampled <= b.c_f);
    CHECK(b.sup_g_sampled <= b.c_g);
    CHECK(b.sup_f_sampled > 0.0);
    CHECK(b.sup_g_sampled > 0.0);
}

TEST_CASE("distance between true and asymptotic currents shrinks with radius") {
    const WavePacket psi = forward_packet();
    const double d6 = fas_distance(psi, 6.0, 3.0, 1e-6, 24, 1e-6);
    const double d12 = fas_distance(psi, 12.0, 6.0, 1e-6, 24, 1e-6);
    CHECK(d6 > 0.0);
    CHECK(d12 < d6);
    CHECK_THROWS_AS((void)fas_distance(psi, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)fas_distance(psi, 1.0, 0.0), std::domain_error);
}

TEST_CASE("complementary caps add up to the full-sphere flux") {
    const WavePacket psi = pair_packet();
    const double R = 7.0;
    const double t = 3.0;
    const Vec3 axis{0.3, -0.2, 0.9};
    const double half = 0.8;
    const SurfaceFluxResult up = surface_flux(psi, make_cap(R, make_cone(axis, half)), t, 64);
    const SurfaceFluxResult down =
        surface_flux(psi, make_cap(R, make_cone(-1.0 * axis, kPi - half)), t, 64);
    const SurfaceFluxResult whole = surface_flux(psi, make_cap(R, make_cone(axis, kPi)), t, 64);
    CHECK(up.signed_flux + down.signed_flux ==
          doctest::Approx(whole.signed_flux).epsilon(1e-9));
    CHECK(up.absolute_flux + down.absolute_flux ==
          doctest::Approx(whole.absolute_flux).epsilon(1e-9));
}

TEST_CASE("a window that ends before the packet arrives carries no flux") {
    GaussianComponent g;
    g.width = 1.0;
    g.wavevector = {0.0, 0.0, 4.0};
    const WavePacket psi({g});
    // By t = 0.1 the packet has moved ~0.4; at radius 200 the density is
    // beyond double-precision tails.
    CHECK(std::abs(finite_window_flux(psi, 200.0, 0.0, 0.1, 32, 1e-9)) < 1e-8);
}

TEST_CASE("remainder gradient vanishes at the origin for a symmetric packet") {
    GaussianComponent g;
    g.width = 1.1;
    const WavePacket psi({g});  // centered, zero carrier: psi is even in y
    const CVec3 grad = remainder_g(psi, {0.0, 0.0, 0.0}, 1.7);
    CHECK(std::abs(grad.x) < 1e-13);
    CHECK(std::abs(grad.y) < 1e-13);
    CHECK(std::abs(grad.z) < 1e-13);
}

TEST_SUITE_END();
