#include "blasius/analysis.hpp"

#include "blasius/parallel.hpp"
#include "jet_batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blasius {

namespace {

constexpr std::size_t kEvalChunk = 256;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return (v.size() % 2 == 1) ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

} // namespace

std::vector<Jet3> forward_jets(const ParamVector& p, std::span<const double> etas) {
    std::vector<Jet3> out(etas.size());
    const std::size_t chunks = (etas.size() + kEvalChunk - 1) / kEvalChunk;
    parallel_for(chunks, [&](std::size_t k) {
        const std::size_t begin = k * kEvalChunk;
        const std::size_t count = std::min(kEvalChunk, etas.size() - begin);
        const detail::BatchTrace t = detail::forward_batch(p, etas.subspan(begin, count));
        for (std::size_t c = 0; c < count; ++c) {
            out[begin + c] = {t.out[0][c], t.out[1][c], t.out[2][c], t.out[3][c]};
        }
    });
    return out;
}

Evaluator network_evaluator(const ParamVector& p) {
    return [p](std::span<const double> etas) { return forward_jets(p, etas); };
}

Evaluator table_evaluator(const SolutionTable& table) {
    if (table.empty()) throw std::invalid_argument("cannot evaluate an empty table");
    return [rows = table.rows](std::span<const double> etas) {
        std::vector<Jet3> out;
        out.reserve(etas.size());
        for (double eta : etas) {
            auto it = std::lower_bound(rows.begin(), rows.end(), eta,
                                       [](const SolutionRow& r, double e) { return r.eta < e; });
            SolutionRow r;
            if (it == rows.end()) {
                r = rows.back();
            } else if (it->eta == eta || it == rows.begin()) {
                r = *it;
            } else {
                const SolutionRow& a = *(it - 1);
                const SolutionRow& b = *it;
                const double w = (eta - a.eta) / (b.eta - a.eta);
                r = {eta, a.f + w * (b.f - a.f), a.fp + w * (b.fp - a.fp), a.fpp + w * (b.fpp - a.fpp), 0.0};
            }
            out.push_back({r.f, r.fp, r.fpp, -0.5 * r.f * r.fpp});
        }
        return out;
    };
}

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> etas(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) etas[i] = a + static_cast<double>(i) * h;
    etas.back() = b;
    return etas;
}

SolutionTable table_from_jets(std::span<const double> etas, std::span<const Jet3> jets) {
    SolutionTable t;
    t.rows.reserve(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const Jet3& j = jets[i];
        t.rows.push_back({etas[i], j.v, j.d1, j.d2, j.d3 + 0.5 * j.v * j.d2});
    }
    return t;
}

} // namespace

SolutionTable tabulate(const ParamVector& p, double eta0, double eta1, std::size_t n) {
    if (n < 2 || !(eta0 < eta1)) throw std::invalid_argument("tabulation needs eta0 < eta1 and n >= 2");
    const auto etas = linspace(eta0, eta1, n);
    const auto jets = forward_jets(p, etas);
    return table_from_jets(etas, jets);
}

double eta99(std::span<const double> etas, std::span<const double> fp) {
    if (etas.size() != fp.size() || etas.empty()) throw std::invalid_argument("eta99 needs matching non-empty inputs");
    constexpr double kEdge = 0.99;
    if (fp[0] >= kEdge) return etas[0];
    for (std::size_t i = 1; i < etas.size(); ++i) {
        if (fp[i] >= kEdge) {
            const double w = (kEdge - fp[i - 1]) / (fp[i] - fp[i - 1]);
            return etas[i - 1] + w * (etas[i] - etas[i - 1]);
        }
    }
    throw std::domain_error("velocity profile never reaches 0.99");
}

double eta99(const SolutionTable& table) {
    std::vector<double> etas, fp;
    etas.reserve(table.size());
    fp.reserve(table.size());
    for (const auto& r : table.rows) {
        etas.push_back(r.eta);
        fp.push_back(r.fp);
    }
    return eta99(etas, fp);
}

ComparisonReport compare(const Evaluator& model, const SolutionTable& oracle, double domain_end) {
    if (oracle.empty()) throw std::domain_error("oracle table is empty");
    if (oracle.rows.front().eta != 0.0) throw std::domain_error("oracle table must start at eta = 0");
    if (domain_end < 0.0) domain_end = oracle.rows.back().eta;
    if (oracle.rows.back().eta < domain_end) throw std::domain_error("oracle table does not cover the domain");

    std::vector<double> etas;
    std::vector<double> oracle_fp;
    for (const auto& r : oracle.rows) {
        if (r.eta > domain_end) break;
        etas.push_back(r.eta);
        oracle_fp.push_back(r.fp);
    }
    const std::vector<Jet3> jets = model(etas);

    ComparisonReport rep;
    double sq = 0.0;
    std::vector<double> model_fp(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const SolutionRow& r = oracle.rows[i];
        const double ef = std::abs(jets[i].v - r.f);
        rep.max_abs_err_f = std::max(rep.max_abs_err_f, ef);
        rep.max_abs_err_fp = std::max(rep.max_abs_err_fp, std::abs(jets[i].d1 - r.fp));
        rep.max_abs_err_fpp = std::max(rep.max_abs_err_fpp, std::abs(jets[i].d2 - r.fpp));
        sq += ef * ef;
        model_fp[i] = jets[i].d1;
    }
    rep.rms_err_f = std::sqrt(sq / static_cast<double>(etas.size()));
    rep.wall_curvature_pinn = jets.front().d2;
    rep.wall_curvature_oracle = oracle.rows.front().fpp;
    rep.eta99_oracle = eta99(etas, oracle_fp);
    try {
        rep.eta99_pinn = eta99(etas, model_fp);
    } catch (const std::domain_error&) {
        rep.eta99_pinn = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

ComparisonReport compare(const ParamVector& p, const SolutionTable& oracle, double domain_end) {
    return compare(network_evaluator(p), oracle, domain_end);
}

double detect_onset(std::span<const double> etas, std::span<const double> fppp, double ref_lo, double ref_hi,
                    double factor) {
    if (etas.size() != fppp.size()) throw std::invalid_argument("detect_onset needs matching inputs");
    std::vector<double> ref;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (etas[i] >= ref_lo && etas[i] <= ref_hi) ref.push_back(std::abs(fppp[i]));
    }
    if (ref.empty()) throw std::invalid_argument("no samples inside the reference interval");
    const double threshold = factor * median_of(std::move(ref));

    double onset = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (std::abs(fppp[i]) > threshold && !(etas[i] <= onset)) onset = etas[i];
    }
    return onset;
}

ProbeResult probe_negative(const ParamVector& converged, const ProbeConfig& cfg) {
    const double pin = forward_jet(converged, 0.0).d2;
    const CollocationGrid grid = CollocationGrid::uniform(cfg.eta0, cfg.eta_m, cfg.points);
    TrainingResult trained = train(converged.config(), cfg.adam, cfg.lbfgs, grid, pin, cfg.boundary);

    SingularityReport rep;
    rep.pin = pin;
    rep.loss = trained.report.final_loss;
    rep.converged = rep.loss.total <= cfg.converged_tol;
    rep.training = std::move(trained.report);

    const auto samples = static_cast<std::size_t>(std::llround((cfg.eta_m - cfg.eta0) / cfg.sample_step)) + 1;
    const std::vector<double> etas = linspace(cfg.eta0, cfg.eta_m, samples);
    const std::vector<Jet3> jets = forward_jets(trained.params, etas);
    rep.table = table_from_jets(etas, jets);

    std::vector<double> fppp(samples);
    std::vector<double> ref;
    for (std::size_t i = 0; i < samples; ++i) {
        const SolutionRow& r = rep.table.rows[i];
        fppp[i] = jets[i].d3;
        if (r.eta <= cfg.window_hi) {
            rep.max_abs_f_window = std::max(rep.max_abs_f_window, std::abs(r.f));
            rep.max_abs_residual_window = std::max(rep.max_abs_residual_window, std::abs(r.residual));
        }
        if (r.eta >= 0.0 && r.eta <= 5.0) ref.push_back(std::abs(fppp[i]));
    }
    rep.median_abs_fppp = median_of(ref);
    rep.onset_eta = detect_onset(etas, fppp, 0.0, 5.0, cfg.onset_factor);
    return {std::move(trained.params), std::move(rep)};
}

} // namespace blasius
