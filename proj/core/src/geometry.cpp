#include "fluxlab/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxlab/quadrature.hpp"

namespace fluxlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Cone make_cone(const Vec3& axis, double half_angle) {
    const double n = norm(axis);
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("make_cone: axis must be a nonzero finite vector");
    if (!(half_angle > 0.0) || !(half_angle <= kPi))
        throw std::invalid_argument("make_cone: half_angle must be in (0, pi]");
    return Cone{axis / n, half_angle};
}

bool contains(const Cone& cone, const Vec3& x) {
    const double r = norm(x);
    if (r == 0.0) return false;
    if (cone.half_angle >= kPi) return true;  // whole space: every x != 0
    return dot(x, cone.axis) > r * std::cos(cone.half_angle);
}

double solid_angle(const Cone& cone) { return 2.0 * kPi * (1.0 - std::cos(cone.half_angle)); }

Frame rotate_to_axis(const Cone& cone) {
    const Vec3& n = cone.axis;
    // The helper vector crossed with n must not be (anti)parallel to n, so
    // near the poles switch to the x axis; the choice is deterministic and
    // e3 is always exactly the cone axis.
    const Vec3 helper = (std::abs(n.z) >= 1.0 - 1e-6) ? Vec3{1, 0, 0} : Vec3{0, 0, 1};
    Vec3 e1 = cross(helper, n);
    e1 = e1 / norm(e1);
    const Vec3 e2 = cross(n, e1);  // already unit; e1 x e2 = n
    return Frame{e1, e2, n};
}

Vec3 outward_normal(const Vec3& x) {
    const double r = norm(x);
    if (r == 0.0) throw std::domain_error("outward_normal: undefined at the origin");
    return x / r;
}

SphereCap make_cap(double radius, const Cone& cone) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("make_cap: radius must be positive and finite");
    return SphereCap{radius, cone};
}

CapQuadrature cap_quadrature(const SphereCap& cap, int order) {
    if (order < 1) throw std::invalid_argument("cap_quadrature: order must be >= 1");
    const double u_lo = std::cos(cap.cone.half_angle);
    const double u_hi = 1.0;
    const GLRule& gl = gauss_legendre(order);
    const int n_phi = 2 * order;
    const double w_phi = 2.0 * kPi / n_phi;
    const Frame frame = rotate_to_axis(cap.cone);

    CapQuadrature q;
    const std::size_t n = static_cast<std::size_t>(order) * n_phi;
    q.theta.reserve(n);
    q.phi.reserve(n);
    q.weight.reserve(n);
    q.dir.reserve(n);
    for (int i = 0; i < order; ++i) {
        const double u = 0.5 * (u_lo + u_hi) + 0.5 * (u_hi - u_lo) * gl.node[i];
        const double wu = 0.5 * (u_hi - u_lo) * gl.weight[i];
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double theta = std::acos(std::min(1.0, std::max(-1.0, u)));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = w_phi * j;
            const Vec3 local{sin_theta * std::cos(phi), sin_theta * std::sin(phi), u};
            q.theta.push_back(theta);
            q.phi.push_back(phi);
            q.weight.push_back(wu * w_phi);
            q.dir.push_back(frame.to_world(local));
        }
    }
    return q;
}

}  // namespace fluxlab
