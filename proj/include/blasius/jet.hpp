#pragma once

#include <cmath>

namespace blasius {

/// Truncated Taylor jet of order 3 in the similarity coordinate eta.
///
/// Holds a value together with its first three eta-derivatives and propagates
/// them exactly through sums, products and tanh. This is what lets the network
/// hand back f, f', f'' and f''' from a single forward pass.
struct Jet3 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;

    friend constexpr bool operator==(const Jet3&, const Jet3&) = default;
};

constexpr Jet3 constant(double c) noexcept { return {c, 0.0, 0.0, 0.0}; }

/// Jet of the coordinate itself.
constexpr Jet3 seed(double eta) noexcept { return {eta, 1.0, 0.0, 0.0}; }

constexpr Jet3 add(const Jet3& a, const Jet3& b) noexcept {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

constexpr Jet3 scale(const Jet3& a, double c) noexcept {
    return {a.v * c, a.d1 * c, a.d2 * c, a.d3 * c};
}

// Leibniz rule through third order. Terms are paired so that mul(a, b) and
// mul(b, a) round identically.
constexpr Jet3 mul(const Jet3& a, const Jet3& b) noexcept {
    return {
        a.v * b.v,
        a.d1 * b.v + a.v * b.d1,
        (a.d2 * b.v + a.v * b.d2) + 2.0 * (a.d1 * b.d1),
        (a.d3 * b.v + a.v * b.d3) + 3.0 * (a.d2 * b.d1 + a.d1 * b.d2),
    };
}

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) noexcept { return add(a, b); }
constexpr Jet3 operator-(const Jet3& a) noexcept { return scale(a, -1.0); }
constexpr Jet3 operator-(const Jet3& a, const Jet3& b) noexcept { return add(a, -b); }
constexpr Jet3 operator*(const Jet3& a, const Jet3& b) noexcept { return mul(a, b); }
constexpr Jet3 operator*(const Jet3& a, double c) noexcept { return scale(a, c); }
constexpr Jet3 operator*(double c, const Jet3& a) noexcept { return scale(a, c); }

/// tanh and its first four derivatives at one point, all expressed through t = tanh(x).
/// The fourth derivative is only needed by the reverse pass.
struct TanhDerivatives {
    double g0, g1, g2, g3, g4;
};

inline TanhDerivatives tanh_derivatives(double x) noexcept {
    const double t = std::tanh(x);
    const double sech2 = 1.0 - t * t;
    return {
        t,
        sech2,
        -2.0 * t * sech2,
        -2.0 * sech2 * (1.0 - 3.0 * t * t),
        8.0 * t * sech2 * (2.0 - 3.0 * t * t),
    };
}

/// Third-order Faa di Bruno composition of tanh with a jet.
inline Jet3 tanh_jet(const Jet3& a) noexcept {
    const TanhDerivatives g = tanh_derivatives(a.v);
    const double a1sq = a.d1 * a.d1;
    return {
        g.g0,
        g.g1 * a.d1,
        g.g2 * a1sq + g.g1 * a.d2,
        g.g3 * a1sq * a.d1 + 3.0 * g.g2 * a.d1 * a.d2 + g.g1 * a.d3,
    };
}

} // namespace blasius
