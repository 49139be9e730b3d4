#include "oracles.hpp"

#include <cmath>

#include "fluxlab/flux.hpp"
#include "fluxlab/quadrature.hpp"
#include "fluxlab/rng.hpp"

namespace oracles {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double grid_norm_squared(const WavePacket& packet, double half_box, int n_per_axis) {
    const fluxlab::GaussianSum state = packet.at(0.0);
    const double h = 2.0 * half_box / n_per_axis;
    double sum = 0.0;
    for (int i = 0; i < n_per_axis; ++i) {
        const double x = -half_box + (i + 0.5) * h;
        for (int j = 0; j < n_per_axis; ++j) {
            const double y = -half_box + (j + 0.5) * h;
            double line = 0.0;
            for (int k = 0; k < n_per_axis; ++k) {
                const double z = -half_box + (k + 0.5) * h;
                line += std::norm(state.value({x, y, z}));
            }
            sum += line;
        }
    }
    return sum * h * h * h;
}

Complex grid_fourier(const WavePacket& packet, const Vec3& k, double half_box, int n_per_axis) {
    const fluxlab::GaussianSum state = packet.at(0.0);
    const double h = 2.0 * half_box / n_per_axis;
    Complex sum{};
    for (int i = 0; i < n_per_axis; ++i) {
        const double x = -half_box + (i + 0.5) * h;
        for (int j = 0; j < n_per_axis; ++j) {
            const double y = -half_box + (j + 0.5) * h;
            Complex line{};
            for (int m = 0; m < n_per_axis; ++m) {
                const double z = -half_box + (m + 0.5) * h;
                const Vec3 p{x, y, z};
                line += std::exp(Complex(0.0, -dot(k, p))) * state.value(p);
            }
            sum += line;
        }
    }
    return std::pow(2.0 * kPi, -1.5) * sum * (h * h * h);
}

CVec3 fd_gradient(const WavePacket& packet, const Vec3& x, double t, double h) {
    auto d = [&](const Vec3& e) {
        return (packet.evaluate(x + h * e, t) - packet.evaluate(x - h * e, t)) / (2.0 * h);
    };
    return {d({1, 0, 0}), d({0, 1, 0}), d({0, 0, 1})};
}

double fd_continuity_residual(const WavePacket& packet, const Vec3& x, double t, double h_x,
                              double h_t) {
    const double ddt =
        (std::norm(packet.evaluate(x, t + h_t)) - std::norm(packet.evaluate(x, t - h_t))) /
        (2.0 * h_t);
    double div = 0.0;
    const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i) {
        const Vec3 jp = fluxlab::flux_vector(packet, x + h_x * e[i], t);
        const Vec3 jm = fluxlab::flux_vector(packet, x - h_x * e[i], t);
        div += (dot(jp, e[i]) - dot(jm, e[i])) / (2.0 * h_x);
    }
    return ddt + div;
}

double mc_momentum_cone_probability(const WavePacket& packet, const fluxlab::Cone& cone,
                                    std::size_t n, std::uint64_t seed) {
    if (packet.components().size() != 1)
        throw std::invalid_argument("mc oracle: single-component packets only");
    const auto& c = packet.components().front();
    const double sk = 1.0 / (2.0 * c.width);  // momentum std per axis
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        fluxlab::CounterRng rng = fluxlab::CounterRng::substream(seed, i);
        const Vec3 k = c.wavevector + sk * rng.next_normal3();
        if (contains(cone, k)) ++hits;
    }
    return double(hits) / double(n);
}

namespace {

// Independent full-sphere rule: explicit sin(theta) weights.
template <class F>
double sphere_integral(F&& f, double r_lo, double r_hi, int radial_panels, int theta_order,
                       int n_phi) {
    const fluxlab::GLRule& gl_r = fluxlab::gauss_legendre(12);
    const fluxlab::GLRule& gl_t = fluxlab::gauss_legendre(theta_order);
    double total = 0.0;
    const double dr = (r_hi - r_lo) / radial_panels;
    for (int p = 0; p < radial_panels; ++p) {
        const double a = r_lo + p * dr;
        for (std::size_t ir = 0; ir < gl_r.node.size(); ++ir) {
            const double r = a + 0.5 * dr * (1.0 + gl_r.node[ir]);
            const double wr = 0.5 * dr * gl_r.weight[ir];
            double shell = 0.0;
            for (int it = 0; it < theta_order; ++it) {
                const double theta = 0.5 * kPi * (1.0 + gl_t.node[it]);
                const double wt = 0.5 * kPi * gl_t.weight[it] * std::sin(theta);
                double ring = 0.0;
                for (int ip = 0; ip < n_phi; ++ip) {
                    const double phi = 2.0 * kPi * ip / n_phi;
                    const Vec3 x{r * std::sin(theta) * std::cos(phi),
                                 r * std::sin(theta) * std::sin(phi), r * std::cos(theta)};
                    ring += f(x);
                }
                shell += wt * ring * (2.0 * kPi / n_phi);
            }
            total += wr * r * r * shell;
        }
    }
    return total;
}

}  // namespace

double radial_angular_norm_squared(const WavePacket& packet, double t, double r_max,
                                   int radial_panels, int theta_order, int n_phi) {
    const fluxlab::GaussianSum state = packet.at(t);
    return sphere_integral([&](const Vec3& x) { return std::norm(state.value(x)); }, 0.0, r_max,
                           radial_panels, theta_order, n_phi);
}

double radial_angular_momentum_norm(const WavePacket& packet, double k_max, int radial_panels,
                                    int theta_order, int n_phi) {
    const fluxlab::GaussianSum fp = packet.fourier_packet();
    return sphere_integral([&](const Vec3& k) { return std::norm(fp.value(k)); }, 0.0, k_max,
                           radial_panels, theta_order, n_phi);
}

double asymptotic_l2_distance(const WavePacket& packet, double t, double r_lo, double r_hi,
                              int radial_panels, int theta_order, int n_phi) {
    const fluxlab::GaussianSum state = packet.at(t);
    const double d2 = sphere_integral(
        [&](const Vec3& x) { return std::norm(state.value(x) - packet.asymptotic_form(x, t)); },
        r_lo, r_hi, radial_panels, theta_order, n_phi);
    return std::sqrt(d2);
}

}  // namespace oracles
