#pragma once

#include "blasius/loss.hpp"

#include <optional>
#include <vector>

namespace blasius::detail {

/// Shared by loss_total() and loss_and_grad() so both report the same bits.
/// When `grad` is non-null it is resized to the parameter count and filled.
/// Throws DivergenceError on any non-finite network output.
LossBreakdown evaluate_loss(const ParamVector& p, const CollocationGrid& g, std::optional<double> pin,
                            BoundaryVariant variant, std::vector<double>* grad);

} // namespace blasius::detail
