#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxlab {

// Gauss-Legendre rule on [-1, 1].  Nodes/weights are computed once per order
// by Newton iteration on the Legendre recurrence and cached.
struct GLRule {
    std::vector<double> node;
    std::vector<double> weight;
};

const GLRule& gauss_legendre(int n);

// Sum in a fixed pairwise (cascade) order: deterministic and with O(log n)
// rounding growth.  Used wherever many quadrature terms are combined, so that
// results do not depend on accumulation order.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Thrown when the adaptive integrator hits its segment budget before meeting
// the requested tolerance.  Carries the partial result so callers can report
// how far the integration got.
class QuadratureBudgetError : public std::runtime_error {
  public:
    QuadratureBudgetError(std::string what, std::vector<double> partial_value, double error_estimate)
        : std::runtime_error(std::move(what)),
          partial(std::move(partial_value)),
          error(error_estimate) {}

    std::vector<double> partial;
    double error;
};

template <int N>
struct AdaptiveResult {
    std::array<double, N> value{};
    double error = 0.0;  // estimate, max over components
    int segments = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (positive half; node 0 last).
inline constexpr std::array<double, 8> kGK15Node = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kGK15WeightK = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
// Gauss-7 weights matching nodes kGK15Node[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGK15WeightG = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <int N, class F>
void gk15(F& f, double a, double b, std::array<double, N>& value, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, N> kron{};
    std::array<double, N> gauss{};
    for (int i = 0; i < 8; ++i) {
        std::array<double, N> fsum{};
        if (i < 7) {
            const auto fp = f(c + h * kGK15Node[i]);
            const auto fm = f(c - h * kGK15Node[i]);
            for (int j = 0; j < N; ++j) fsum[j] = fp[j] + fm[j];
        } else {
            fsum = f(c);
        }
        for (int j = 0; j < N; ++j) kron[j] += kGK15WeightK[i] * fsum[j];
        if (i % 2 == 1) {
            for (int j = 0; j < N; ++j) gauss[j] += kGK15WeightG[i / 2] * fsum[j];
        }
    }
    error = 0.0;
    for (int j = 0; j < N; ++j) {
        kron[j] *= h;
        gauss[j] *= h;
        error = std::max(error, std::abs(kron[j] - gauss[j]));
    }
    value = kron;
}

}  // namespace detail

// Adaptive vector-valued integration of f : double -> std::array<double, N>
// over [a, b].  Worst-error-first interval bisection with a Gauss-Kronrod
// 7/15 embedded-rule error estimate on every segment; stops when the summed
// error estimate is <= abs_tol (applied to each component).  The final value
// is accumulated pairwise over segments sorted by position, so the result is
// a deterministic function of the achieved partition.
template <int N, class F>
AdaptiveResult<N> integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                     int max_segments = 4096, int initial_segments = 8) {
    struct Seg {
        double a, b;
        std::array<double, N> value;
        double error;
    };

    AdaptiveResult<N> out;
    if (a == b) return out;

    std::vector<Seg> segs;
    segs.reserve(256);
    if (initial_segments < 1) initial_segments = 1;
    const double h0 = (b - a) / initial_segments;
    for (int i = 0; i < initial_segments; ++i) {
        Seg s;
        s.a = a + i * h0;
        s.b = (i + 1 == initial_segments) ? b : a + (i + 1) * h0;
        detail::gk15<N>(f, s.a, s.b, s.value, s.error);
        segs.push_back(s);
    }

    auto total_error = [&] {
        double e = 0.0;
        for (const auto& s : segs) e += s.error;
        return e;
    };

    double err = total_error();
    while (err > abs_tol) {
        if (static_cast<int>(segs.size()) >= max_segments) {
            std::vector<double> partial;
            for (int j = 0; j < N; ++j) {
                std::vector<double> terms;
                terms.reserve(segs.size());
                for (const auto& s : segs) terms.push_back(s.value[j]);
                partial.push_back(pairwise_sum(terms));
            }
            throw QuadratureBudgetError(
                "adaptive quadrature: segment budget exhausted before tolerance", partial, err);
        }
        // Split the segment with the largest error estimate.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        Seg left = segs[worst];
        const double mid = 0.5 * (left.a + left.b);
        Seg right;
        right.a = mid;
        right.b = left.b;
        left.b = mid;
        detail::gk15<N>(f, left.a, left.b, left.value, left.error);
        detail::gk15<N>(f, right.a, right.b, right.value, right.error);
        segs[worst] = left;
        segs.push_back(right);
        err = total_error();
    }

    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    std::vector<double> terms(segs.size());
    for (int j = 0; j < N; ++j) {
        for (std::size_t i = 0; i < segs.size(); ++i) terms[i] = segs[i].value[j];
        out.value[j] = pairwise_sum(terms);
    }
    out.error = err;
    out.segments = static_cast<int>(segs.size());
    return out;
}

template <class F>
AdaptiveResult<1> integrate_adaptive_scalar(F&& f, double a, double b, double abs_tol,
                                            int max_segments = 4096, int initial_segments = 8) {
    auto wrap = [&f](double t) { return std::array<double, 1>{f(t)}; };
    return integrate_adaptive<1>(wrap, a, b, abs_tol, max_segments, initial_segments);
}

}  // namespace fluxlab
