#include "blasius/cli.hpp"

#include "blasius/gradient.hpp"
#include "blasius/io.hpp"
#include "blasius/svg.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace blasius::cli {

std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "train") return Mode::train;
    if (s == "solve-oracle") return Mode::solve_oracle;
    if (s == "compare") return Mode::compare;
    if (s == "probe-negative") return Mode::probe_negative;
    if (s == "export") return Mode::export_table;
    return std::nullopt;
}

std::string to_string(Mode m) {
    switch (m) {
    case Mode::train: return "train";
    case Mode::solve_oracle: return "solve-oracle";
    case Mode::compare: return "compare";
    case Mode::probe_negative: return "probe-negative";
    case Mode::export_table: return "export";
    }
    return "unknown";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
        throw ConfigError("key '" + key + "': expected a real number, got '" + v + "'");
    }
    return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    errno = 0;
    char* end = nullptr;
    if (v.empty() || v.front() == '-') throw ConfigError("key '" + key + "': expected a non-negative integer");
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || errno == ERANGE) {
        throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
    }
    return x;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

template <class T>
Setter real(T RunConfig::*section, double T::*field) {
    return [=](RunConfig& c, const std::string& k, const std::string& v) { (c.*section).*field = to_real(k, v); };
}

template <class T, class U>
Setter count(T RunConfig::*section, U T::*field) {
    return [=](RunConfig& c, const std::string& k, const std::string& v) {
        (c.*section).*field = static_cast<U>(to_uint(k, v));
    };
}

Setter path_setter(std::optional<std::filesystem::path> Paths::*field) {
    return [=](RunConfig& c, const std::string&, const std::string& v) { c.paths.*field = v; };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"mode",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.mode = parse_mode(v);
             if (!c.mode) throw ConfigError("key '" + k + "': unknown mode '" + v + "'");
         }},
        {"network.depth", count(&RunConfig::network, &NetworkConfig::depth)},
        {"network.width", count(&RunConfig::network, &NetworkConfig::width)},
        {"network.seed", count(&RunConfig::network, &NetworkConfig::seed)},
        {"adam.base_lr", real(&RunConfig::adam, &AdamConfig::base_lr)},
        {"adam.decay", real(&RunConfig::adam, &AdamConfig::decay)},
        {"adam.decay_every", count(&RunConfig::adam, &AdamConfig::decay_every)},
        {"adam.rate_reading",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "decay") {
                 c.adam.reading = RateReading::decay;
             } else if (v == "literal") {
                 c.adam.reading = RateReading::literal;
             } else {
                 throw ConfigError("key '" + k + "': expected decay or literal");
             }
         }},
        {"adam.beta1", real(&RunConfig::adam, &AdamConfig::beta1)},
        {"adam.beta2", real(&RunConfig::adam, &AdamConfig::beta2)},
        {"adam.eps", real(&RunConfig::adam, &AdamConfig::eps)},
        {"adam.max_steps", count(&RunConfig::adam, &AdamConfig::max_steps)},
        {"adam.switch_tol", real(&RunConfig::adam, &AdamConfig::switch_tol)},
        {"lbfgs.memory", count(&RunConfig::lbfgs, &LbfgsConfig::memory)},
        {"lbfgs.max_iters", count(&RunConfig::lbfgs, &LbfgsConfig::max_iters)},
        {"lbfgs.grad_tol", real(&RunConfig::lbfgs, &LbfgsConfig::grad_tol)},
        {"lbfgs.c1", real(&RunConfig::lbfgs, &LbfgsConfig::c1)},
        {"lbfgs.c2", real(&RunConfig::lbfgs, &LbfgsConfig::c2)},
        {"lbfgs.max_linesearch", count(&RunConfig::lbfgs, &LbfgsConfig::max_linesearch)},
        {"grid.eta0", real(&RunConfig::grid, &GridSpec::eta0)},
        {"grid.eta_m", real(&RunConfig::grid, &GridSpec::eta_m)},
        {"grid.points", count(&RunConfig::grid, &GridSpec::points)},
        {"loss.boundary",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "derivative") {
                 c.boundary = BoundaryVariant::derivative;
             } else if (v == "literal") {
                 c.boundary = BoundaryVariant::literal;
             } else {
                 throw ConfigError("key '" + k + "': expected derivative or literal");
             }
         }},
        {"loss.pin", [](RunConfig& c, const std::string& k, const std::string& v) { c.pin = to_real(k, v); }},
        {"oracle.h", real(&RunConfig::oracle, &ShootingOptions::h)},
        {"oracle.eta_max", real(&RunConfig::oracle, &ShootingOptions::eta_max)},
        {"oracle.tol", real(&RunConfig::oracle, &ShootingOptions::tol)},
        {"oracle.stride",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.oracle_stride = to_uint(k, v); }},
        {"probe.eta0", real(&RunConfig::probe, &ProbeConfig::eta0)},
        {"probe.eta_m", real(&RunConfig::probe, &ProbeConfig::eta_m)},
        {"probe.points", count(&RunConfig::probe, &ProbeConfig::points)},
        {"probe.sample_step", real(&RunConfig::probe, &ProbeConfig::sample_step)},
        {"probe.onset_factor", real(&RunConfig::probe, &ProbeConfig::onset_factor)},
        {"export.eta0", real(&RunConfig::export_spec, &ExportSpec::eta0)},
        {"export.eta1", real(&RunConfig::export_spec, &ExportSpec::eta1)},
        {"export.points", count(&RunConfig::export_spec, &ExportSpec::points)},
        {"paths.checkpoint_in", path_setter(&Paths::checkpoint_in)},
        {"paths.checkpoint_out", path_setter(&Paths::checkpoint_out)},
        {"paths.csv_out", path_setter(&Paths::csv_out)},
        {"paths.plot_out", path_setter(&Paths::plot_out)},
        {"paths.report_out", path_setter(&Paths::report_out)},
    };
    return table;
}

void validate(const RunConfig& c) {
    try {
        c.network.validate();
        c.adam.validate();
        c.lbfgs.validate();
        c.probe.adam.validate();
        c.probe.lbfgs.validate();
        (void)CollocationGrid::uniform(c.grid.eta0, c.grid.eta_m, c.grid.points);
        (void)CollocationGrid::uniform(c.probe.eta0, c.probe.eta_m, c.probe.points);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(c.oracle.h > 0.0) || !(c.oracle.eta_max > 0.0)) throw ConfigError("oracle.h and oracle.eta_max must be positive");
    if (c.oracle_stride == 0) throw ConfigError("oracle.stride must be positive");
    if (!(c.probe.sample_step > 0.0)) throw ConfigError("probe.sample_step must be positive");
    if (c.export_spec.points < 2 || !(c.export_spec.eta0 < c.export_spec.eta1)) {
        throw ConfigError("export range must be non-empty");
    }
}

std::filesystem::path resolve(const std::optional<std::filesystem::path>& p, const std::filesystem::path& out_dir,
                              const char* fallback) {
    return p ? *p : out_dir / fallback;
}

template <class Writer>
void write_text(const std::filesystem::path& path, Writer&& w) {
    std::ostringstream ss;
    w(ss);
    write_atomic(path, ss.str());
}

SolutionTable decimate(const SolutionTable& t, std::size_t stride) {
    SolutionTable out;
    for (std::size_t i = 0; i < t.size(); i += stride) out.rows.push_back(t.rows[i]);
    if ((t.size() - 1) % stride != 0) out.rows.push_back(t.rows.back());
    return out;
}

CollocationGrid grid_of(const RunConfig& c) { return CollocationGrid::uniform(c.grid.eta0, c.grid.eta_m, c.grid.points); }

} // namespace

RunConfig parse_config(std::istream& is) {
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(cfg, key, value);
    }
    // Probe optimizers follow the main ones unless the file says otherwise.
    cfg.probe.adam = cfg.adam;
    cfg.probe.lbfgs = cfg.lbfgs;
    cfg.probe.boundary = cfg.boundary;
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    return parse_config(is);
}

void execute(Mode mode, const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    switch (mode) {
    case Mode::train: {
        const CollocationGrid grid = grid_of(cfg);
        TrainingResult r = train(cfg.network, cfg.adam, cfg.lbfgs, grid, cfg.pin, cfg.boundary);
        const SolutionTable table = tabulate(r.params, grid.eta0, grid.eta_m, cfg.export_spec.points);
        const auto ckpt = resolve(cfg.paths.checkpoint_out, out_dir, "checkpoint.txt");
        save_checkpoint(ckpt, r.params);
        write_text(resolve(cfg.paths.report_out, out_dir, "training_report.txt"),
                   [&](std::ostream& os) { write_training_report(os, r.report); });
        write_text(out_dir / "loss_curve.csv", [&](std::ostream& os) { write_loss_curve_csv(os, r.report); });
        write_text(resolve(cfg.paths.csv_out, out_dir, "pinn_solution.csv"),
                   [&](std::ostream& os) { write_solution_csv(os, table); });
        emit_plot(table, resolve(cfg.paths.plot_out, out_dir, "pinn_solution.svg"),
                  {.title = "Network solution", .y_label = "f, f', f''"});
        out << "loss_total=" << format_real(r.report.final_loss.total)
            << " fpp0=" << format_real(forward_jet(r.params, 0.0).d2) << " checkpoint=" << ckpt.string() << '\n';
        break;
    }
    case Mode::solve_oracle: {
        const ShootingResult s = shoot(cfg.oracle);
        const SolutionTable table = decimate(s.table, cfg.oracle_stride);
        write_text(resolve(cfg.paths.csv_out, out_dir, "oracle.csv"),
                   [&](std::ostream& os) { write_solution_csv(os, table); });
        emit_plot(table, resolve(cfg.paths.plot_out, out_dir, "oracle.svg"),
                  {.title = "Shooting solution", .y_label = "f, f', f''"});
        out << "s_star=" << format_real(s.s_star) << " iterations=" << s.iterations
            << " eta99=" << format_real(eta99(s.table)) << '\n';
        break;
    }
    case Mode::compare: {
        const ParamVector p = load_checkpoint(resolve(cfg.paths.checkpoint_in, out_dir, "checkpoint.txt"));
        const ShootingResult s = shoot(cfg.oracle);
        const ComparisonReport rep = compare(p, s.table);
        write_text(resolve(cfg.paths.csv_out, out_dir, "comparison.csv"),
                   [&](std::ostream& os) { write_comparison_csv(os, rep); });
        const SolutionTable oracle = decimate(s.table, cfg.oracle_stride);
        const SolutionTable model = tabulate(p, 0.0, cfg.oracle.eta_max, cfg.export_spec.points);
        emit_comparison_plot(model, oracle, resolve(cfg.paths.plot_out, out_dir, "comparison.svg"),
                             {.title = "Network against shooting solution", .y_label = "f, f', f''"});
        out << "wall_curvature_pinn=" << format_real(rep.wall_curvature_pinn)
            << " wall_curvature_oracle=" << format_real(rep.wall_curvature_oracle)
            << " max_abs_err_f=" << format_real(rep.max_abs_err_f) << '\n';
        break;
    }
    case Mode::probe_negative: {
        const ParamVector p = load_checkpoint(resolve(cfg.paths.checkpoint_in, out_dir, "checkpoint.txt"));
        ProbeConfig probe = cfg.probe;
        ProbeResult r = probe_negative(p, probe);
        save_checkpoint(resolve(cfg.paths.checkpoint_out, out_dir, "probe_checkpoint.txt"), r.params);
        write_text(resolve(cfg.paths.report_out, out_dir, "singularity_report.txt"),
                   [&](std::ostream& os) { write_singularity_report(os, r.report); });
        write_text(resolve(cfg.paths.csv_out, out_dir, "negative_axis.csv"),
                   [&](std::ostream& os) { write_solution_csv(os, r.report.table); });
        emit_plot(r.report.table, resolve(cfg.paths.plot_out, out_dir, "negative_axis.svg"),
                  {.title = "Network solution on the extended axis", .y_label = "f, f', f''", .y_min = -2.0,
                   .y_max = 12.0});
        out << "onset_eta=" << format_real(r.report.onset_eta) << " loss_total=" << format_real(r.report.loss.total)
            << " converged=" << (r.report.converged ? "true" : "false") << '\n';
        break;
    }
    case Mode::export_table: {
        const ParamVector p = load_checkpoint(resolve(cfg.paths.checkpoint_in, out_dir, "checkpoint.txt"));
        const SolutionTable table = tabulate(p, cfg.export_spec.eta0, cfg.export_spec.eta1, cfg.export_spec.points);
        write_text(resolve(cfg.paths.csv_out, out_dir, "solution.csv"),
                   [&](std::ostream& os) { write_solution_csv(os, table); });
        emit_plot(table, resolve(cfg.paths.plot_out, out_dir, "solution.svg"),
                  {.title = "Network solution", .y_label = "f, f', f''"});
        out << "rows=" << table.size() << '\n';
        break;
    }
    }
}

namespace {

void report_error(std::ostream& err, const char* category, const std::string& message) {
    std::string m = message;
    for (char& ch : m) {
        if (ch == '\n' || ch == '"') ch = '\'';
    }
    err << "error: category=" << category << " message=\"" << m << "\"\n";
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Physics-informed network solver for the Blasius boundary layer"};
    std::string mode_name;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    app.add_option("mode", mode_name, "train | solve-oracle | compare | probe-negative | export")->required();
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--seed", seed, "overrides network.seed");
    app.add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        report_error(err, "config", e.what());
        return exit_code::config;
    }

    try {
        const auto mode = parse_mode(mode_name);
        if (!mode) throw ConfigError("unknown mode '" + mode_name + "'");
        RunConfig cfg = load_config(config_path);
        if (seed) cfg.network.seed = *seed;
        execute(*mode, cfg, out_dir, out);
        return exit_code::ok;
    } catch (const ConfigError& e) {
        report_error(err, "config", e.what());
        return exit_code::config;
    } catch (const DivergenceError& e) {
        report_error(err, "divergence", e.what());
        return exit_code::divergence;
    } catch (const OptimizerError& e) {
        report_error(err, "divergence", e.what());
        return exit_code::divergence;
    } catch (const ShootingDivergence& e) {
        report_error(err, "divergence", e.what());
        return exit_code::divergence;
    } catch (const IoError& e) {
        report_error(err, "io", e.what());
        return exit_code::io;
    } catch (const std::filesystem::filesystem_error& e) {
        report_error(err, "io", e.what());
        return exit_code::io;
    } catch (const std::domain_error& e) {
        report_error(err, "divergence", e.what());
        return exit_code::divergence;
    } catch (const std::runtime_error& e) {
        report_error(err, "divergence", e.what());
        return exit_code::divergence;
    } catch (const std::invalid_argument& e) {
        report_error(err, "config", e.what());
        return exit_code::config;
    }
}

} // namespace blasius::cli
