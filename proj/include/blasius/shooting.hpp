#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace blasius {

struct SolutionRow {
    double eta = 0.0;
    double f = 0.0;
    double fp = 0.0;
    double fpp = 0.0;
    double residual = 0.0;

    friend bool operator==(const SolutionRow&, const SolutionRow&) = default;
};

/// Tabulated solution, rows strictly increasing in eta.
struct SolutionTable {
    std::vector<SolutionRow> rows;

    bool empty() const noexcept { return rows.empty(); }
    std::size_t size() const noexcept { return rows.size(); }

    friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

/// The integrated state left the representable range.
class ShootingDivergence : public std::runtime_error {
public:
    ShootingDivergence(const std::string& what, double last_eta)
        : std::runtime_error(what), last_eta_(last_eta) {}

    double last_eta() const noexcept { return last_eta_; }

private:
    double last_eta_;
};

/// Fixed-step classical RK4 on (f, f', f'')' = (f', f'', -f f''/2) from
/// (0, 0, s), one table row per step. Throws ShootingDivergence if |f| > 1e12.
SolutionTable rk4_shoot(double s, double h, double eta_max);

struct ShootingOptions {
    double h = 1e-4;
    double eta_max = 8.0;
    double s_low = 0.1;
    double s_high = 0.5;
    double tol = 1e-10;
    std::size_t max_iters = 100;
};

struct ShootingResult {
    double s_star = 0.0;  // converged f''(0)
    double h = 0.0;
    double eta_max = 0.0;
    std::size_t iterations = 0;
    SolutionTable table;
};

/// Secant iteration on f'(eta_max; s) - 1. Throws std::runtime_error when
/// it does not converge within opts.max_iters.
ShootingResult shoot(const ShootingOptions& opts = {});

/// Final (f, f', f'') of the same RK4 scheme carried out in long double.
/// For step sizes where the double-precision truncation error is already
/// at the rounding floor (order-of-accuracy studies).
std::array<long double, 3> rk4_endpoint_extended(long double s, long double h, long double eta_max);

/// f'(eta_max; s) - 1 for a single trial wall curvature.
double shooting_defect(double s, double h, double eta_max);

/// Integrates from eta = 0 towards negative eta with step h until |f| > 1e8
/// (or eta passes -10) and returns the last eta reached.
double backward_blowup(double s, double h);

} // namespace blasius
