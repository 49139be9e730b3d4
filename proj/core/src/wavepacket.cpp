#include "fluxlab/wavepacket.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fluxlab {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}
}  // namespace

Complex GaussianSum::value(const Vec3& x) const {
    Complex s{};
    for (const auto& g : terms) s += g.value(x);
    return s;
}

CVec3 GaussianSum::gradient(const Vec3& x) const {
    CVec3 s{};
    for (const auto& g : terms) s += g.value_and_gradient(x).second;
    return s;
}

std::pair<Complex, CVec3> GaussianSum::value_and_gradient(const Vec3& x) const {
    Complex v{};
    CVec3 gr{};
    for (const auto& g : terms) {
        auto [vi, gi] = g.value_and_gradient(x);
        v += vi;
        gr += gi;
    }
    return {v, gr};
}

double GaussianSum::norm_squared() const {
    // Hermitian double sum; the imaginary parts cancel pairwise.
    double s = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = 0; j < terms.size(); ++j) s += overlap(terms[i], terms[j]).real();
    return s;
}

WavePacket::WavePacket(std::vector<GaussianComponent> components, double norm_tolerance)
    : comps_(std::move(components)), norm_tol_(norm_tolerance) {
    std::ostringstream bad;
    if (comps_.empty()) bad << "packet needs at least one component; ";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        const auto& c = comps_[i];
        if (!(c.width > 0.0) || !std::isfinite(c.width))
            bad << "component " << i << ": width must be positive and finite; ";
        if (!std::isfinite(c.amplitude.real()) || !std::isfinite(c.amplitude.imag()))
            bad << "component " << i << ": amplitude must be finite; ";
        if (!finite(c.center)) bad << "component " << i << ": center must be finite; ";
        if (!finite(c.wavevector)) bad << "component " << i << ": wavevector must be finite; ";
    }
    if (!(norm_tol_ > 0.0)) bad << "norm_tolerance must be positive; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw std::invalid_argument("WavePacket: " + msg);
}

WavePacket WavePacket::normalized() const {
    const double n2 = norm_squared(0.0);
    if (!(n2 > 1e-300))
        throw std::invalid_argument("WavePacket::normalized: packet has (numerically) zero norm");
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<GaussianComponent> scaled = comps_;
    for (auto& c : scaled) c.amplitude *= scale;
    return WavePacket(std::move(scaled), norm_tol_);
}

bool WavePacket::is_normalized() const { return std::abs(norm_squared(0.0) - 1.0) <= norm_tol_; }

double WavePacket::norm_squared(double t) const { return at(t).norm_squared(); }

GaussianSum WavePacket::at(double t) const {
    GaussianSum s;
    s.terms.reserve(comps_.size());
    for (const auto& c : comps_) s.terms.push_back(evolve(c, t));
    return s;
}

GaussianSum WavePacket::fourier_packet() const {
    GaussianSum s;
    s.terms.reserve(comps_.size());
    for (const auto& c : comps_) s.terms.push_back(fourier_transform(to_canonical(c)));
    return s;
}

Complex WavePacket::evaluate(const Vec3& x, double t) const { return at(t).value(x); }

CVec3 WavePacket::gradient(const Vec3& x, double t) const { return at(t).gradient(x); }

Complex WavePacket::fourier(const Vec3& k) const { return fourier_packet().value(k); }

Complex WavePacket::asymptotic_form(const Vec3& x, double t) const {
    if (!(t > 0.0)) throw std::domain_error("asymptotic_form: t must be positive");
    const Complex it(0.0, t);
    return std::pow(it, -1.5) * std::exp(Complex(0.0, norm2(x) / (2.0 * t))) * fourier(x / t);
}

namespace {

// 1-D midpoint sum of the free propagator applied to a 1-D Gaussian factor:
//   integral (2 pi i t)^(-1/2) exp(i (x - y)^2 / (2 t)) *
//            exp(-(y - b)^2/(4 s^2) + i k (y - b)) dy
Complex propagate_axis_1d(double x, double t, double b, double k, double sigma, int n,
                          double pad) {
    const double lo = b - pad * sigma;
    const double hi = b + pad * sigma;
    const double h = (hi - lo) / n;
    const double inv4s2 = 1.0 / (4.0 * sigma * sigma);
    const double inv2t = 1.0 / (2.0 * t);
    // Accumulate real/imag separately from cos/sin to keep the inner loop cheap.
    double sr = 0.0, si = 0.0;
    for (int m = 0; m < n; ++m) {
        const double y = lo + (m + 0.5) * h;
        const double d = x - y;
        const double u = y - b;
        const double amp = std::exp(-u * u * inv4s2);
        const double phase = d * d * inv2t + k * u;
        sr += amp * std::cos(phase);
        si += amp * std::sin(phase);
    }
    return std::pow(Complex(0.0, 2.0 * kPi * t), -0.5) * Complex(sr * h, si * h);
}

Complex oracle_value(const std::vector<GaussianComponent>& comps, const Vec3& x, double t, int n,
                     double pad) {
    Complex total{};
    for (const auto& c : comps) {
        const Complex ix = propagate_axis_1d(x.x, t, c.center.x, c.wavevector.x, c.width, n, pad);
        const Complex iy = propagate_axis_1d(x.y, t, c.center.y, c.wavevector.y, c.width, n, pad);
        const Complex iz = propagate_axis_1d(x.z, t, c.center.z, c.wavevector.z, c.width, n, pad);
        total += c.amplitude * std::pow(2.0 * kPi * c.width * c.width, -0.75) * ix * iy * iz;
    }
    return total;
}

}  // namespace

Complex WavePacket::evolve_by_quadrature_oracle(const Vec3& x, double t,
                                                const OracleGrid& grid) const {
    if (!(t > 0.0))
        throw std::domain_error("evolve_by_quadrature_oracle: propagator quadrature needs t > 0");
    if (grid.points_per_axis < 16)
        throw std::invalid_argument("evolve_by_quadrature_oracle: grid too coarse");
    const Complex fine = oracle_value(comps_, x, t, grid.points_per_axis, grid.padding_sigmas);
    const Complex coarse =
        oracle_value(comps_, x, t, grid.points_per_axis / 2, grid.padding_sigmas);
    const double scale = std::max(std::abs(fine), 1e-30);
    if (std::abs(fine - coarse) / scale > grid.consistency_tol)
        throw std::runtime_error(
            "evolve_by_quadrature_oracle: two-resolution consistency check failed "
            "(grid not converged for this (x, t))");
    return fine;
}

double WavePacket::momentum_support_radius(double nsigma) const {
    double r = 0.0;
    for (const auto& c : comps_)
        r = std::max(r, norm(c.wavevector) + nsigma / (2.0 * c.width));
    return r;
}

double WavePacket::position_support_radius(double t, double nsigma) const {
    double r = 0.0;
    for (const auto& c : comps_)
        r = std::max(r, norm(c.center + t * c.wavevector) + nsigma * spread_width(c.width, t));
    return r;
}

Vec3 WavePacket::mean_wavevector() const {
    Vec3 m{};
    double wsum = 0.0;
    for (const auto& c : comps_) {
        const double w = std::norm(c.amplitude);
        m += w * c.wavevector;
        wsum += w;
    }
    return wsum > 0.0 ? m / wsum : Vec3{};
}

}  // namespace fluxlab
