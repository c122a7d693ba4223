#pragma once

#include "blasius/loss.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blasius {

/// How the quoted Adam "learning rate" of 0.96 is read.
enum class RateReading {
    decay,    // lr(k) = base_lr * decay^(k / decay_every)
    literal,  // lr(k) = base_lr, no schedule
};

struct AdamConfig {
    double base_lr = 1e-3;
    double decay = 0.96;
    std::size_t decay_every = 100;  // steps per decay epoch
    RateReading reading = RateReading::decay;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t max_steps = 5000;
    double switch_tol = 1e-3;  // hand over to L-BFGS once the loss is at or below this

    void validate() const;
    double learning_rate(std::size_t step) const;
};

struct LbfgsConfig {
    std::size_t memory = 20;
    std::size_t max_iters = 2000;
    double grad_tol = 1e-9;  // on the infinity norm
    double c1 = 1e-4;
    double c2 = 0.9;
    std::size_t max_linesearch = 25;  // function evaluations per line search

    void validate() const;
};

/// Non-finite values or other numerical failure inside an optimizer phase.
class OptimizerError : public std::runtime_error {
public:
    OptimizerError(const std::string& phase, std::size_t step, const std::string& what)
        : std::runtime_error(phase + " step " + std::to_string(step) + ": " + what),
          phase_(phase),
          step_(step) {}

    const std::string& phase() const noexcept { return phase_; }
    std::size_t step() const noexcept { return step_; }

private:
    std::string phase_;
    std::size_t step_;
};

struct AdamState {
    std::vector<double> x;
    std::vector<double> m;
    std::vector<double> v;
    std::size_t step = 0;

    explicit AdamState(std::vector<double> x0);
};

/// One bias-corrected Adam update of `state.x`. Throws OptimizerError on a
/// non-finite or mis-sized gradient, leaving the state untouched.
void adam_step(AdamState& state, std::span<const double> grad, const AdamConfig& cfg);

enum class LbfgsStatus { converged, max_iterations, line_search_failed };

std::string to_string(LbfgsStatus s);

struct LbfgsRecord {
    std::size_t iter = 0;
    double loss = 0.0;
    double grad_norm = 0.0;  // infinity norm
    double step = 0.0;       // accepted line-search step length

    friend bool operator==(const LbfgsRecord&, const LbfgsRecord&) = default;
};

struct LbfgsResult {
    std::vector<double> x;
    double loss = 0.0;
    LbfgsStatus status = LbfgsStatus::max_iterations;
    std::vector<LbfgsRecord> history;  // entry 0 is the starting point
    std::size_t evaluations = 0;
    std::size_t pairs_stored = 0;
    std::size_t pairs_rejected = 0;  // s'y too small to keep
    double min_stored_curvature = std::numeric_limits<double>::infinity();  // min s'y over kept pairs
};

/// Writes the gradient into `grad` and returns the objective value.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Limited-memory BFGS with a strong-Wolfe line search. Never returns a point
/// worse than x0.
LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x0, const LbfgsConfig& cfg);

struct AdamRecord {
    std::size_t step = 0;
    double loss = 0.0;
    double lr = 0.0;

    friend bool operator==(const AdamRecord&, const AdamRecord&) = default;
};

struct TrainingReport {
    NetworkConfig network;
    std::vector<AdamRecord> adam_curve;
    std::vector<LbfgsRecord> lbfgs_curve;
    LbfgsStatus lbfgs_status = LbfgsStatus::max_iterations;
    LossBreakdown final_loss;
    double adam_seconds = 0.0;
    double lbfgs_seconds = 0.0;
};

struct TrainingResult {
    ParamVector params;
    TrainingReport report;
};

/// Adam followed by L-BFGS refinement, starting from init_params(net).
/// Throws OptimizerError labelled "adam" or "lbfgs" on divergence.
TrainingResult train(const NetworkConfig& net, const AdamConfig& adam, const LbfgsConfig& lbfgs,
                     const CollocationGrid& grid, std::optional<double> pin = std::nullopt,
                     BoundaryVariant variant = BoundaryVariant::derivative);

/// Same, continuing from given parameters.
TrainingResult train_from(ParamVector start, const AdamConfig& adam, const LbfgsConfig& lbfgs,
                          const CollocationGrid& grid, std::optional<double> pin = std::nullopt,
                          BoundaryVariant variant = BoundaryVariant::derivative);

} // namespace blasius
