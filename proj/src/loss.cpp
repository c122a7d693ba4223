#include "blasius/loss.hpp"

#include "blasius/gradient.hpp"
#include "blasius/parallel.hpp"
#include "jet_batch.hpp"
#include "loss_eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blasius {

namespace {

// Columns per evaluation chunk. Fixed so that the reduction order, and hence
// every bit of the result, does not depend on the worker count.
constexpr std::size_t kChunkColumns = 64;

double residual_of(double f, double fpp, double fppp) { return fppp + 0.5 * f * fpp; }

} // namespace

CollocationGrid CollocationGrid::uniform(double eta0, double eta_m, std::size_t n) {
    if (!(std::isfinite(eta0) && std::isfinite(eta_m)) || !(eta0 < eta_m)) {
        throw std::invalid_argument("collocation grid requires finite eta0 < eta_m");
    }
    if (n < 2) throw std::invalid_argument("collocation grid requires at least 2 points");
    CollocationGrid g;
    g.eta0 = eta0;
    g.eta_m = eta_m;
    g.points.resize(n);
    const double h = (eta_m - eta0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g.points[i] = eta0 + static_cast<double>(i) * h;
    g.points.back() = eta_m;
    return g;
}

double residual(const ParamVector& p, double eta) {
    const Jet3 f = forward_jet(p, eta);
    return residual_of(f.v, f.d2, f.d3);
}

double loss_ode(const ParamVector& p, std::span<const double> etas) {
    std::vector<double> sorted(etas.begin(), etas.end());
    std::sort(sorted.begin(), sorted.end());
    const detail::BatchTrace t = detail::forward_batch(p, sorted);
    double sum = 0.0;
    for (std::size_t c = 0; c < sorted.size(); ++c) {
        const double r = residual_of(t.out[0][c], t.out[2][c], t.out[3][c]);
        sum += r * r;
    }
    return sum;
}

double loss_ode(const ParamVector& p, const CollocationGrid& g) { return loss_ode(p, g.points); }

double loss_init(const ParamVector& p, double eta0) {
    const Jet3 f = forward_jet(p, eta0);
    return f.v * f.v + f.d1 * f.d1;
}

double loss_boundary(const ParamVector& p, double eta_m, BoundaryVariant variant) {
    const Jet3 f = forward_jet(p, eta_m);
    const double e = (variant == BoundaryVariant::derivative ? f.d1 : f.v) - 1.0;
    return e * e;
}

LossBreakdown assemble_loss(std::span<const Jet3> grid_jets, const Jet3& wall, const Jet3& far,
                            std::optional<double> pin, BoundaryVariant variant) {
    LossBreakdown out;
    for (const Jet3& j : grid_jets) {
        const double r = residual_of(j.v, j.d2, j.d3);
        out.ode += r * r;
    }
    out.init = wall.v * wall.v + wall.d1 * wall.d1;
    const double e = (variant == BoundaryVariant::derivative ? far.d1 : far.v) - 1.0;
    out.boundary = e * e;
    if (pin) {
        const double d = wall.d2 - *pin;
        out.pin = d * d;
    }
    out.total = out.ode + out.init + out.boundary + out.pin;
    return out;
}

LossBreakdown loss_total(const ParamVector& p, const CollocationGrid& g, std::optional<double> pin,
                         BoundaryVariant variant) {
    return detail::evaluate_loss(p, g, pin, variant, nullptr);
}

namespace detail {

LossBreakdown evaluate_loss(const ParamVector& p, const CollocationGrid& g, std::optional<double> pin,
                            BoundaryVariant variant, std::vector<double>* grad) {
    const std::size_t n = g.points.size();
    const std::size_t wall = n;
    const std::size_t far = n + 1;

    std::vector<double> etas(g.points);
    etas.push_back(0.0);
    etas.push_back(g.eta_m);
    const std::size_t total_cols = etas.size();
    const std::size_t chunks = (total_cols + kChunkColumns - 1) / kChunkColumns;

    std::array<std::vector<double>, 4> f;
    for (auto& ch : f) ch.assign(total_cols, 0.0);
    std::vector<std::vector<double>> partial(grad ? chunks : 0);

    parallel_for(chunks, [&](std::size_t k) {
        const std::size_t begin = k * kChunkColumns;
        const std::size_t count = std::min(kChunkColumns, total_cols - begin);
        const auto cols = std::span<const double>(etas).subspan(begin, count);
        const BatchTrace t = forward_batch(p, cols);
        for (std::size_t ch = 0; ch < 4; ++ch) {
            std::copy(t.out[ch].begin(), t.out[ch].end(), f[ch].begin() + static_cast<std::ptrdiff_t>(begin));
        }
        if (!grad) return;

        std::array<std::vector<double>, 4> adj;
        for (auto& ch : adj) ch.assign(count, 0.0);
        for (std::size_t c = 0; c < count; ++c) {
            const std::size_t col = begin + c;
            const double f0 = t.out[0][c], f1 = t.out[1][c], f2 = t.out[2][c], f3 = t.out[3][c];
            if (col < n) {
                const double r = residual_of(f0, f2, f3);
                adj[0][c] += r * f2;
                adj[2][c] += r * f0;
                adj[3][c] += 2.0 * r;
            } else if (col == wall) {
                adj[0][c] += 2.0 * f0;
                adj[1][c] += 2.0 * f1;
                if (pin) adj[2][c] += 2.0 * (f2 - *pin);
            } else {
                if (variant == BoundaryVariant::derivative) {
                    adj[1][c] += 2.0 * (f1 - 1.0);
                } else {
                    adj[0][c] += 2.0 * (f0 - 1.0);
                }
            }
        }
        partial[k].assign(p.size(), 0.0);
        backward_batch(p, t, adj, partial[k]);
    });

    for (std::size_t col = 0; col < total_cols; ++col) {
        for (const auto& ch : f) {
            if (!std::isfinite(ch[col])) {
                std::ostringstream msg;
                msg << "non-finite network output at eta=" << etas[col];
                throw DivergenceError(msg.str(), etas[col]);
            }
        }
    }

    std::vector<Jet3> grid_jets(n);
    for (std::size_t c = 0; c < n; ++c) grid_jets[c] = {f[0][c], f[1][c], f[2][c], f[3][c]};
    const LossBreakdown out = assemble_loss(grid_jets, {f[0][wall], f[1][wall], f[2][wall], f[3][wall]},
                                            {f[0][far], f[1][far], f[2][far], f[3][far]}, pin, variant);
    if (!std::isfinite(out.total)) {
        std::ostringstream msg;
        msg << "non-finite loss (ode=" << out.ode << ")";
        throw DivergenceError(msg.str(), g.eta0);
    }

    if (grad) {
        grad->assign(p.size(), 0.0);
        for (const auto& part : partial) {
            for (std::size_t i = 0; i < part.size(); ++i) (*grad)[i] += part[i];
        }
        for (std::size_t i = 0; i < grad->size(); ++i) {
            if (!std::isfinite((*grad)[i])) throw DivergenceError("non-finite gradient", g.eta0);
        }
    }
    return out;
}

} // namespace detail

} // namespace blasius
