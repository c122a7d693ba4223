#pragma once

#include "blasius/loss.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace blasius {

/// Raised when the loss or any network output turns non-finite.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double eta) : std::runtime_error(what), eta_(eta) {}

    /// Collocation point at which the first non-finite value appeared.
    double eta() const noexcept { return eta_; }

private:
    double eta_;
};

struct GradResult {
    LossBreakdown loss;
    std::vector<double> grad;  // same layout as ParamVector::values()
};

/// Loss (bit-identical to loss_total) and its exact gradient with respect to
/// every weight and bias, by a reverse pass through the jet-valued forward pass.
GradResult loss_and_grad(const ParamVector& p, const CollocationGrid& g,
                         std::optional<double> pin = std::nullopt,
                         BoundaryVariant variant = BoundaryVariant::derivative);

} // namespace blasius
