#include "blasius/gradient.hpp"

#include "loss_eval.hpp"

namespace blasius {

GradResult loss_and_grad(const ParamVector& p, const CollocationGrid& g, std::optional<double> pin,
                         BoundaryVariant variant) {
    GradResult r;
    r.loss = detail::evaluate_loss(p, g, pin, variant, &r.grad);
    return r;
}

} // namespace blasius
