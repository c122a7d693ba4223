#pragma once

#include "blasius/network.hpp"

#include <optional>
#include <span>
#include <vector>

namespace blasius {

/// Equally spaced collocation points from eta0 to eta_m inclusive.
struct CollocationGrid {
    double eta0 = 0.0;
    double eta_m = 8.0;
    std::vector<double> points;

    /// Throws std::invalid_argument unless eta0 < eta_m and n >= 2.
    static CollocationGrid uniform(double eta0, double eta_m, std::size_t n);

    std::size_t size() const noexcept { return points.size(); }
};

/// Which far-field condition the boundary term imposes.
enum class BoundaryVariant {
    derivative,  // (f'(eta_m) - 1)^2, i.e. f'(inf) = 1
    literal,     // (f(eta_m) - 1)^2, the equation as printed
};

struct LossBreakdown {
    double ode = 0.0;       // sum of squared residuals over the grid
    double init = 0.0;      // f(0)^2 + f'(0)^2
    double boundary = 0.0;  // far-field term
    double pin = 0.0;       // (f''(0) - c)^2, zero when no pin is set
    double total = 0.0;

    friend bool operator==(const LossBreakdown&, const LossBreakdown&) = default;
};

/// f''' + f f'' / 2 at eta.
double residual(const ParamVector& p, double eta);

/// Sum of squared residuals, accumulated in ascending eta order.
double loss_ode(const ParamVector& p, const CollocationGrid& g);
double loss_ode(const ParamVector& p, std::span<const double> etas);

double loss_init(const ParamVector& p, double eta0);

double loss_boundary(const ParamVector& p, double eta_m,
                     BoundaryVariant variant = BoundaryVariant::derivative);

/// Loss terms from already evaluated jets: one per grid point (ascending
/// eta), the wall jet at eta = 0 and the far-field jet at eta_m.
LossBreakdown assemble_loss(std::span<const Jet3> grid_jets, const Jet3& wall, const Jet3& far,
                            std::optional<double> pin = std::nullopt,
                            BoundaryVariant variant = BoundaryVariant::derivative);

/// Full physics-informed loss. Wall conditions (and the optional f''(0) pin)
/// are always imposed at eta = 0, the far-field term at g.eta_m.
LossBreakdown loss_total(const ParamVector& p, const CollocationGrid& g,
                         std::optional<double> pin = std::nullopt,
                         BoundaryVariant variant = BoundaryVariant::derivative);

} // namespace blasius
