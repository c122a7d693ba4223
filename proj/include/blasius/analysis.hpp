#pragma once

#include "blasius/loss.hpp"
#include "blasius/optim.hpp"
#include "blasius/shooting.hpp"

#include <functional>
#include <span>
#include <vector>

namespace blasius {

/// Evaluates (f, f', f'', f''') at many eta at once.
using Evaluator = std::function<std::vector<Jet3>(std::span<const double>)>;

/// forward_jet() at every eta; same bits, evaluated in column batches.
std::vector<Jet3> forward_jets(const ParamVector& p, std::span<const double> etas);

Evaluator network_evaluator(const ParamVector& p);

/// Exact rows at table nodes, linear interpolation in between; f''' = -f f''/2.
Evaluator table_evaluator(const SolutionTable& table);

/// Tabulates the network on n equally spaced points of [eta0, eta1].
SolutionTable tabulate(const ParamVector& p, double eta0, double eta1, std::size_t n);

/// First eta at which fp reaches 0.99, linearly interpolated between nodes.
/// Throws std::domain_error if the profile never gets there.
double eta99(std::span<const double> etas, std::span<const double> fp);
double eta99(const SolutionTable& table);

struct ComparisonReport {
    double max_abs_err_f = 0.0;
    double max_abs_err_fp = 0.0;
    double max_abs_err_fpp = 0.0;
    double rms_err_f = 0.0;
    double wall_curvature_pinn = 0.0;
    double wall_curvature_oracle = 0.0;
    double eta99_pinn = 0.0;
    double eta99_oracle = 0.0;

    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Compares `model` with `oracle` at every oracle node in [0, domain_end].
/// Throws std::domain_error if the oracle does not start at eta = 0 or does
/// not reach domain_end. A negative domain_end means "the whole table".
/// eta99_pinn is NaN when the model profile never reaches 0.99.
ComparisonReport compare(const Evaluator& model, const SolutionTable& oracle, double domain_end = -1.0);
ComparisonReport compare(const ParamVector& p, const SolutionTable& oracle, double domain_end = -1.0);

/// Largest eta whose |f'''| exceeds `factor` times the median of |f'''| over
/// samples with eta in [ref_lo, ref_hi]. Returns NaN when nothing exceeds it.
double detect_onset(std::span<const double> etas, std::span<const double> fppp, double ref_lo = 0.0,
                    double ref_hi = 5.0, double factor = 100.0);

struct ProbeConfig {
    AdamConfig adam;
    LbfgsConfig lbfgs;
    double eta0 = -5.69;
    double eta_m = 7.0;
    std::size_t points = 100;
    BoundaryVariant boundary = BoundaryVariant::derivative;
    double sample_step = 1e-3;      // resolution of the post-training scan
    double window_hi = -5.5;        // left window is [eta0, window_hi]
    double onset_factor = 100.0;
    double converged_tol = 1e-5;    // loss at or below this counts as converged
};

struct SingularityReport {
    double pin = 0.0;  // f''(0) taken from the standard run
    LossBreakdown loss;
    bool converged = false;
    double max_abs_f_window = 0.0;
    double max_abs_residual_window = 0.0;
    double median_abs_fppp = 0.0;  // over [0, 5]
    double onset_eta = 0.0;
    TrainingReport training;
    SolutionTable table;  // scan of the trained network over [eta0, eta_m]
};

struct ProbeResult {
    ParamVector params;
    SingularityReport report;
};

/// Retrains a fresh network of the same shape and seed on [eta0, eta_m] with
/// the wall curvature of `converged` pinned, then scans it for blow-up.
ProbeResult probe_negative(const ParamVector& converged, const ProbeConfig& cfg = {});

} // namespace blasius
