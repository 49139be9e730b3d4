#pragma once

#include <vector>

#include "fluxlab/vec.hpp"

namespace fluxlab {

// Open cone of directions about `axis` with half-opening angle `half_angle`
// (radians, in (0, pi]).  half_angle = pi/2 is a half-space; half_angle = pi
// is all of R^3 minus the origin.
struct Cone {
    Vec3 axis{0.0, 0.0, 1.0};
    double half_angle = 0.0;
};

// Validating constructor: normalizes `axis` (throws on zero axis) and checks
// half_angle in (0, pi].
Cone make_cone(const Vec3& axis, double half_angle);

// Strict membership x . axis > |x| cos(half_angle); the origin is never a
// member.  For half_angle = pi the cone is taken to be every x != 0 (the
// antipodal ray is included).
bool contains(const Cone& cone, const Vec3& x);

// Solid angle subtended: 2 pi (1 - cos(half_angle)).
double solid_angle(const Cone& cone);

// Right-handed orthonormal frame (columns e1, e2, e3) with e3 = cone.axis.
// Deterministic for every axis, including axis = -z.
struct Frame {
    Vec3 e1, e2, e3;
    Vec3 to_world(const Vec3& local) const {
        return local.x * e1 + local.y * e2 + local.z * e3;
    }
};
Frame rotate_to_axis(const Cone& cone);

// x / |x|; throws std::domain_error at the origin.
Vec3 outward_normal(const Vec3& x);

// Spherical cap: the portion of the sphere of radius `radius` (centred at
// the origin) cut out by `cone`.
struct SphereCap {
    double radius = 1.0;
    Cone cone{};
};
SphereCap make_cap(double radius, const Cone& cone);

// Product quadrature over the cap's solid angle: Gauss-Legendre of order
// `order` in cos(theta) on [cos(half_angle), 1] times a periodic trapezoid
// rule with 2*order points in phi.  Weights carry the solid-angle measure
// d(cos theta) d(phi), so sum(weight) = solid_angle(cone) and surface
// integrals over the cap are  radius^2 * sum_i weight_i * f(radius * dir_i).
struct CapQuadrature {
    std::vector<double> theta;   // polar angle from the cone axis
    std::vector<double> phi;     // azimuth about the cone axis
    std::vector<double> weight;  // solid-angle weights
    std::vector<Vec3> dir;       // world-frame unit directions
};
CapQuadrature cap_quadrature(const SphereCap& cap, int order);

}  // namespace fluxlab
