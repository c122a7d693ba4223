#include "blasius/optim.hpp"

#include "blasius/gradient.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

namespace blasius {

void AdamConfig::validate() const {
    if (!(base_lr > 0.0)) throw std::invalid_argument("adam.base_lr must be positive");
    if (!(beta1 > 0.0 && beta1 < 1.0)) throw std::invalid_argument("adam.beta1 must lie in (0, 1)");
    if (!(beta2 > 0.0 && beta2 < 1.0)) throw std::invalid_argument("adam.beta2 must lie in (0, 1)");
    if (!(eps > 0.0)) throw std::invalid_argument("adam.eps must be positive");
    if (!(decay > 0.0 && decay <= 1.0)) throw std::invalid_argument("adam.decay must lie in (0, 1]");
    if (decay_every == 0) throw std::invalid_argument("adam.decay_every must be positive");
}

double AdamConfig::learning_rate(std::size_t step) const {
    if (reading == RateReading::literal) return base_lr;
    return base_lr * std::pow(decay, static_cast<double>(step / decay_every));
}

void LbfgsConfig::validate() const {
    if (memory == 0) throw std::invalid_argument("lbfgs.memory must be at least 1");
    if (!(c1 > 0.0 && c1 < c2 && c2 < 1.0)) throw std::invalid_argument("lbfgs requires 0 < c1 < c2 < 1");
    if (max_linesearch == 0) throw std::invalid_argument("lbfgs.max_linesearch must be positive");
    if (!(grad_tol >= 0.0)) throw std::invalid_argument("lbfgs.grad_tol must be non-negative");
}

AdamState::AdamState(std::vector<double> x0)
    : x(std::move(x0)), m(x.size(), 0.0), v(x.size(), 0.0) {}

void adam_step(AdamState& state, std::span<const double> grad, const AdamConfig& cfg) {
    if (grad.size() != state.x.size()) {
        throw OptimizerError("adam", state.step, "gradient size does not match parameters");
    }
    for (double g : grad) {
        if (!std::isfinite(g)) throw OptimizerError("adam", state.step, "non-finite gradient");
    }
    const double lr = cfg.learning_rate(state.step);
    const double t = static_cast<double>(state.step + 1);
    const double c1 = 1.0 - std::pow(cfg.beta1, t);
    const double c2 = 1.0 - std::pow(cfg.beta2, t);
    for (std::size_t i = 0; i < grad.size(); ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
        const double mhat = state.m[i] / c1;
        const double vhat = state.v[i] / c2;
        state.x[i] -= lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
    ++state.step;
}

std::string to_string(LbfgsStatus s) {
    switch (s) {
    case LbfgsStatus::converged: return "converged";
    case LbfgsStatus::max_iterations: return "max_iterations";
    case LbfgsStatus::line_search_failed: return "line_search_failed";
    }
    return "unknown";
}

namespace {

using Vec = Eigen::VectorXd;

struct Probe {
    double alpha = 0.0;
    double f = 0.0;
    double slope = 0.0;  // directional derivative
    Vec x;
    Vec g;
};

// Minimiser of the cubic through (a, fa, ga) and (b, fb, gb), kept inside the
// central 80% of the bracket; falls back to bisection.
double cubic_step(const Probe& a, const Probe& b) {
    const double lo = std::min(a.alpha, b.alpha);
    const double hi = std::max(a.alpha, b.alpha);
    const double margin = 0.1 * (hi - lo);
    const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    double t = 0.5 * (lo + hi);
    if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
        const double denom = b.slope - a.slope + 2.0 * d2;
        if (denom != 0.0) {
            const double cand = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
            if (std::isfinite(cand)) t = cand;
        }
    }
    return std::clamp(t, lo + margin, hi - margin);
}

class LineSearch {
public:
    LineSearch(const Objective& f, const LbfgsConfig& cfg, std::size_t& evals)
        : f_(f), cfg_(cfg), evals_(evals) {}

    // Returns a probe satisfying the strong Wolfe conditions, or nullopt. `best`
    // always receives the lowest point evaluated, for the caller's fallback.
    std::optional<Probe> run(const Vec& x, double f0, const Vec& g0, const Vec& dir, double alpha0,
                             std::optional<Probe>& best) {
        x_ = &x;
        dir_ = &dir;
        best_ = &best;
        budget_ = cfg_.max_linesearch;
        Probe start{0.0, f0, g0.dot(dir), x, g0};
        slope0_ = start.slope;
        f0_ = f0;

        Probe prev = start;
        double alpha = alpha0;
        for (std::size_t i = 0; budget_ > 0; ++i) {
            Probe cur = evaluate(alpha);
            if (!std::isfinite(cur.f) || cur.f > f0_ + cfg_.c1 * alpha * slope0_ || (i > 0 && cur.f >= prev.f)) {
                return zoom(prev, cur);
            }
            if (std::abs(cur.slope) <= -cfg_.c2 * slope0_) return cur;
            if (cur.slope >= 0.0) return zoom(cur, prev);
            prev = std::move(cur);
            alpha *= 2.0;
        }
        return std::nullopt;
    }

private:
    Probe evaluate(double alpha) {
        --budget_;
        ++evals_;
        Probe p;
        p.alpha = alpha;
        p.x = *x_ + alpha * *dir_;
        p.g.resize(p.x.size());
        try {
            p.f = f_(std::span<const double>(p.x.data(), static_cast<std::size_t>(p.x.size())),
                     std::span<double>(p.g.data(), static_cast<std::size_t>(p.g.size())));
        } catch (const DivergenceError&) {
            p.f = std::numeric_limits<double>::infinity();
        }
        if (!std::isfinite(p.f) || !p.g.allFinite()) {
            p.f = std::numeric_limits<double>::infinity();
            p.slope = std::numeric_limits<double>::infinity();
            return p;
        }
        p.slope = p.g.dot(*dir_);
        if (!*best_ || p.f < (*best_)->f) *best_ = p;
        return p;
    }

    std::optional<Probe> zoom(Probe lo, Probe hi) {
        while (budget_ > 0) {
            double alpha;
            if (std::isfinite(hi.f) && std::isfinite(hi.slope)) {
                alpha = cubic_step(lo, hi);
            } else {
                alpha = 0.5 * (lo.alpha + hi.alpha);
            }
            if (alpha == lo.alpha || alpha == hi.alpha) return std::nullopt;
            Probe cur = evaluate(alpha);
            if (!std::isfinite(cur.f) || cur.f > f0_ + cfg_.c1 * alpha * slope0_ || cur.f >= lo.f) {
                hi = std::move(cur);
            } else {
                if (std::abs(cur.slope) <= -cfg_.c2 * slope0_) return cur;
                if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = std::move(cur);
            }
        }
        return std::nullopt;
    }

    const Objective& f_;
    const LbfgsConfig& cfg_;
    std::size_t& evals_;
    const Vec* x_ = nullptr;
    const Vec* dir_ = nullptr;
    std::optional<Probe>* best_ = nullptr;
    std::size_t budget_ = 0;
    double slope0_ = 0.0;
    double f0_ = 0.0;
};

struct CurvaturePair {
    Vec s;
    Vec y;
    double rho;
};

// Two-loop recursion; identity seed until the first pair is stored, then
// scaled by s'y / y'y of the newest pair.
Vec search_direction(const Vec& g, const std::deque<CurvaturePair>& pairs) {
    Vec q = -g;
    std::vector<double> alpha(pairs.size());
    for (std::size_t k = pairs.size(); k-- > 0;) {
        alpha[k] = pairs[k].rho * pairs[k].s.dot(q);
        q -= alpha[k] * pairs[k].y;
    }
    if (!pairs.empty()) {
        const CurvaturePair& last = pairs.back();
        q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double beta = pairs[k].rho * pairs[k].y.dot(q);
        q += (alpha[k] - beta) * pairs[k].s;
    }
    return q;
}

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

} // namespace

LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x0, const LbfgsConfig& cfg) {
    cfg.validate();
    LbfgsResult result;
    Vec x = Eigen::Map<const Vec>(x0.data(), static_cast<Eigen::Index>(x0.size()));
    Vec g(x.size());
    double fx = f(std::span<const double>(x.data(), x0.size()), std::span<double>(g.data(), x0.size()));
    result.evaluations = 1;
    if (!std::isfinite(fx) || !g.allFinite()) {
        throw OptimizerError("lbfgs", 0, "non-finite objective at the starting point");
    }
    result.history.push_back({0, fx, inf_norm(g), 0.0});

    std::deque<CurvaturePair> pairs;
    LineSearch search(f, cfg, result.evaluations);
    result.status = LbfgsStatus::max_iterations;

    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        if (inf_norm(g) <= cfg.grad_tol) {
            result.status = LbfgsStatus::converged;
            break;
        }
        Vec dir = search_direction(g, pairs);
        if (!(g.dot(dir) < 0.0)) {
            pairs.clear();
            dir = -g;
        }

        std::optional<Probe> best;
        std::optional<Probe> accepted = search.run(x, fx, g, dir, 1.0, best);
        if (!accepted && !pairs.empty()) {
            // Stale curvature information; retry once along steepest descent.
            pairs.clear();
            dir = -g;
            accepted = search.run(x, fx, g, dir, 1.0, best);
        }
        if (!accepted) {
            if (best && best->f < fx) {
                accepted = std::move(best);
            } else {
                result.status = LbfgsStatus::line_search_failed;
                break;
            }
        }

        Vec s = accepted->x - x;
        Vec y = accepted->g - g;
        const double sy = s.dot(y);
        if (sy > std::numeric_limits<double>::epsilon() * y.squaredNorm()) {
            pairs.push_back({std::move(s), std::move(y), 1.0 / sy});
            if (pairs.size() > cfg.memory) pairs.pop_front();
            ++result.pairs_stored;
            result.min_stored_curvature = std::min(result.min_stored_curvature, sy);
        } else {
            ++result.pairs_rejected;
        }
        x = std::move(accepted->x);
        g = std::move(accepted->g);
        fx = accepted->f;
        result.history.push_back({iter, fx, inf_norm(g), accepted->alpha});
    }

    result.x.assign(x.data(), x.data() + x.size());
    result.loss = fx;
    return result;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TrainingResult train(const NetworkConfig& net, const AdamConfig& adam, const LbfgsConfig& lbfgs,
                     const CollocationGrid& grid, std::optional<double> pin, BoundaryVariant variant) {
    return train_from(init_params(net), adam, lbfgs, grid, pin, variant);
}

TrainingResult train_from(ParamVector start, const AdamConfig& adam, const LbfgsConfig& lbfgs,
                          const CollocationGrid& grid, std::optional<double> pin, BoundaryVariant variant) {
    adam.validate();
    lbfgs.validate();
    const NetworkConfig net = start.config();

    TrainingReport report;
    report.network = net;

    auto t0 = std::chrono::steady_clock::now();
    AdamState state(std::vector<double>(start.values().begin(), start.values().end()));
    std::vector<double> best = state.x;
    double best_loss = std::numeric_limits<double>::infinity();

    for (std::size_t step = 0;; ++step) {
        GradResult gr;
        try {
            gr = loss_and_grad(ParamVector(net, state.x), grid, pin, variant);
        } catch (const DivergenceError& e) {
            throw OptimizerError("adam", step, e.what());
        }
        const double lr = adam.learning_rate(state.step);
        report.adam_curve.push_back({step, gr.loss.total, lr});
        if (gr.loss.total < best_loss) {
            best_loss = gr.loss.total;
            best = state.x;
        }
        if (step >= adam.max_steps || gr.loss.total <= adam.switch_tol) break;
        adam_step(state, gr.grad, adam);
    }
    report.adam_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    Objective objective = [&](std::span<const double> x, std::span<double> g) {
        GradResult gr = loss_and_grad(ParamVector(net, std::vector<double>(x.begin(), x.end())), grid, pin, variant);
        std::copy(gr.grad.begin(), gr.grad.end(), g.begin());
        return gr.loss.total;
    };
    LbfgsResult lr;
    try {
        lr = lbfgs_minimize(objective, best, lbfgs);
    } catch (const DivergenceError& e) {
        throw OptimizerError("lbfgs", 0, e.what());
    }
    report.lbfgs_seconds = seconds_since(t0);
    report.lbfgs_curve = std::move(lr.history);
    report.lbfgs_status = lr.status;

    ParamVector params(net, std::move(lr.x));
    report.final_loss = loss_total(params, grid, pin, variant);
    return {std::move(params), std::move(report)};
}

} // namespace blasius
