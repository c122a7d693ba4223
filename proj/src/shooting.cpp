#include "blasius/shooting.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace blasius {

namespace {

template <class T>
using StateT = std::array<T, 3>;
using State = StateT<double>;

template <class T>
StateT<T> rhs(const StateT<T>& y) {
    return {y[1], y[2], T(-0.5) * y[0] * y[2]};
}

template <class T>
StateT<T> axpy(const StateT<T>& y, T a, const StateT<T>& k) {
    return {y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]};
}

template <class T>
StateT<T> rk4_step(const StateT<T>& y, T h) {
    const StateT<T> k1 = rhs(y);
    const StateT<T> k2 = rhs(axpy(y, T(0.5) * h, k1));
    const StateT<T> k3 = rhs(axpy(y, T(0.5) * h, k2));
    const StateT<T> k4 = rhs(axpy(y, h, k3));
    StateT<T> out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = y[i] + h / T(6) * (k1[i] + T(2) * k2[i] + T(2) * k3[i] + k4[i]);
    return out;
}

SolutionRow make_row(double eta, const State& y) {
    const double fppp = -0.5 * y[0] * y[2];
    return {eta, y[0], y[1], y[2], fppp + 0.5 * y[0] * y[2]};
}

std::size_t step_count(double h, double span) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size must be positive");
    if (!(span > 0.0)) throw std::invalid_argument("integration range must be positive");
    return static_cast<std::size_t>(std::llround(span / h));
}

} // namespace

SolutionTable rk4_shoot(double s, double h, double eta_max) {
    const std::size_t steps = step_count(h, eta_max);
    SolutionTable table;
    table.rows.reserve(steps + 1);
    State y{0.0, 0.0, s};
    table.rows.push_back(make_row(0.0, y));
    for (std::size_t i = 1; i <= steps; ++i) {
        y = rk4_step(y, h);
        // Nodes are i*h rather than an accumulated sum so tables at h and h/2 share nodes exactly.
        const double eta = static_cast<double>(i) * h;
        if (!(std::abs(y[0]) <= 1e12) || !std::isfinite(y[1]) || !std::isfinite(y[2])) {
            std::ostringstream msg;
            msg << "RK4 integration diverged after eta=" << table.rows.back().eta;
            throw ShootingDivergence(msg.str(), table.rows.back().eta);
        }
        table.rows.push_back(make_row(eta, y));
    }
    return table;
}

std::array<long double, 3> rk4_endpoint_extended(long double s, long double h, long double eta_max) {
    const std::size_t steps = step_count(static_cast<double>(h), static_cast<double>(eta_max));
    StateT<long double> y{0.0L, 0.0L, s};
    for (std::size_t i = 0; i < steps; ++i) y = rk4_step(y, h);
    return y;
}

double shooting_defect(double s, double h, double eta_max) {
    const std::size_t steps = step_count(h, eta_max);
    State y{0.0, 0.0, s};
    for (std::size_t i = 0; i < steps; ++i) y = rk4_step(y, h);
    return y[1] - 1.0;
}

ShootingResult shoot(const ShootingOptions& opts) {
    double s0 = opts.s_low;
    double s1 = opts.s_high;
    double g0 = shooting_defect(s0, opts.h, opts.eta_max);
    double g1 = shooting_defect(s1, opts.h, opts.eta_max);
    for (std::size_t it = 1; it <= opts.max_iters; ++it) {
        if (std::abs(g1) <= opts.tol) {
            return {s1, opts.h, opts.eta_max, it, rk4_shoot(s1, opts.h, opts.eta_max)};
        }
        if (g1 == g0) break;
        const double s2 = s1 - g1 * (s1 - s0) / (g1 - g0);
        s0 = s1;
        g0 = g1;
        s1 = s2;
        g1 = shooting_defect(s1, opts.h, opts.eta_max);
    }
    throw std::runtime_error("shooting iteration did not converge");
}

double backward_blowup(double s, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
    constexpr double kFloor = -10.0;
    constexpr double kBlowup = 1e8;
    State y{0.0, 0.0, s};
    double eta = 0.0;
    for (std::size_t i = 1;; ++i) {
        const double next = -static_cast<double>(i) * h;
        if (next < kFloor) return eta;
        y = rk4_step(y, -h);
        eta = next;
        if (!(std::abs(y[0]) <= kBlowup)) return eta;
    }
}

} // namespace blasius
