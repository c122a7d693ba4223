#include "blasius/io.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace blasius {

namespace {

constexpr const char* kCheckpointMagic = "blasius-pinn-checkpoint v1";
constexpr const char* kSolutionHeader = "eta,f,fp,fpp,residual";
constexpr const char* kComparisonHeader =
    "max_abs_err_f,max_abs_err_fp,max_abs_err_fpp,rms_err_f,wall_curvature_pinn,wall_curvature_oracle,"
    "eta99_pinn,eta99_oracle";

double parse_real(const std::string& s, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v))) {
        throw IoError(std::string("malformed ") + what + ": '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

std::string format_real(double x) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os << contents;
        os.flush();
        if (!os) {
            os.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_checkpoint(std::ostream& os, const ParamVector& p) {
    const NetworkConfig& c = p.config();
    os << kCheckpointMagic << '\n' << c.depth << ' ' << c.width << ' ' << c.seed << '\n';
    for (double v : p.values()) os << format_real(v) << '\n';
}

ParamVector read_checkpoint(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty checkpoint");
    strip_cr(line);
    if (line != kCheckpointMagic) throw IoError("not a v1 checkpoint: '" + line + "'");
    if (!std::getline(is, line)) throw IoError("checkpoint missing network line");
    NetworkConfig cfg;
    {
        std::istringstream ss(line);
        if (!(ss >> cfg.depth >> cfg.width >> cfg.seed)) throw IoError("malformed network line: '" + line + "'");
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("checkpoint: ") + e.what());
    }
    std::vector<double> values;
    values.reserve(parameter_count(cfg));
    while (std::getline(is, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        values.push_back(parse_real(line, "checkpoint parameter"));
    }
    try {
        return ParamVector(cfg, std::move(values));
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const ParamVector& p) {
    std::ostringstream ss;
    write_checkpoint(ss, p);
    write_atomic(path, ss.str());
}

ParamVector load_checkpoint(const std::filesystem::path& path) {
    std::istringstream ss(read_file(path));
    return read_checkpoint(ss);
}

void write_solution_csv(std::ostream& os, const SolutionTable& t) {
    os << kSolutionHeader << '\n';
    for (const auto& r : t.rows) {
        os << format_real(r.eta) << ',' << format_real(r.f) << ',' << format_real(r.fp) << ','
           << format_real(r.fpp) << ',' << format_real(r.residual) << '\n';
    }
}

SolutionTable read_solution_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty solution CSV");
    strip_cr(line);
    if (line != kSolutionHeader) throw IoError("unexpected solution CSV header: '" + line + "'");
    SolutionTable t;
    while (std::getline(is, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 5) throw IoError("solution CSV row needs 5 fields: '" + line + "'");
        t.rows.push_back({parse_real(cells[0], "eta"), parse_real(cells[1], "f"), parse_real(cells[2], "fp"),
                          parse_real(cells[3], "fpp"), parse_real(cells[4], "residual")});
    }
    return t;
}

void write_training_report(std::ostream& os, const TrainingReport& r) {
    os << "depth: " << r.network.depth << '\n'
       << "width: " << r.network.width << '\n'
       << "seed: " << r.network.seed << '\n'
       << "adam_steps: " << (r.adam_curve.empty() ? 0 : r.adam_curve.size() - 1) << '\n'
       << "lbfgs_iterations: " << (r.lbfgs_curve.empty() ? 0 : r.lbfgs_curve.size() - 1) << '\n'
       << "lbfgs_status: " << to_string(r.lbfgs_status) << '\n'
       << "loss_ode: " << format_real(r.final_loss.ode) << '\n'
       << "loss_init: " << format_real(r.final_loss.init) << '\n'
       << "loss_boundary: " << format_real(r.final_loss.boundary) << '\n'
       << "loss_pin: " << format_real(r.final_loss.pin) << '\n'
       << "loss_total: " << format_real(r.final_loss.total) << '\n'
       << "adam_seconds: " << r.adam_seconds << '\n'
       << "lbfgs_seconds: " << r.lbfgs_seconds << '\n';
}

void write_loss_curve_csv(std::ostream& os, const TrainingReport& r) {
    os << "phase,step,loss,grad_norm,step_length,lr\n";
    for (const auto& a : r.adam_curve) {
        os << "adam," << a.step << ',' << format_real(a.loss) << ",,," << format_real(a.lr) << '\n';
    }
    for (const auto& l : r.lbfgs_curve) {
        os << "lbfgs," << l.iter << ',' << format_real(l.loss) << ',' << format_real(l.grad_norm) << ','
           << format_real(l.step) << ",\n";
    }
}

void write_comparison_csv(std::ostream& os, const ComparisonReport& r) {
    os << kComparisonHeader << '\n'
       << format_real(r.max_abs_err_f) << ',' << format_real(r.max_abs_err_fp) << ','
       << format_real(r.max_abs_err_fpp) << ',' << format_real(r.rms_err_f) << ','
       << format_real(r.wall_curvature_pinn) << ',' << format_real(r.wall_curvature_oracle) << ','
       << format_real(r.eta99_pinn) << ',' << format_real(r.eta99_oracle) << '\n';
}

ComparisonReport read_comparison_csv(std::istream& is) {
    std::string header, row;
    if (!std::getline(is, header) || !std::getline(is, row)) throw IoError("truncated comparison CSV");
    strip_cr(header);
    strip_cr(row);
    if (header != kComparisonHeader) throw IoError("unexpected comparison CSV header");
    const auto c = split(row, ',');
    if (c.size() != 8) throw IoError("comparison CSV row needs 8 fields");
    return {parse_real(c[0], "max_abs_err_f"), parse_real(c[1], "max_abs_err_fp"),
            parse_real(c[2], "max_abs_err_fpp"), parse_real(c[3], "rms_err_f"),
            parse_real(c[4], "wall_curvature_pinn"), parse_real(c[5], "wall_curvature_oracle"),
            parse_real(c[6], "eta99_pinn"), parse_real(c[7], "eta99_oracle")};
}

void write_singularity_report(std::ostream& os, const SingularityReport& r) {
    os << "pin_fpp0: " << format_real(r.pin) << '\n'
       << "loss_ode: " << format_real(r.loss.ode) << '\n'
       << "loss_init: " << format_real(r.loss.init) << '\n'
       << "loss_boundary: " << format_real(r.loss.boundary) << '\n'
       << "loss_pin: " << format_real(r.loss.pin) << '\n'
       << "loss_total: " << format_real(r.loss.total) << '\n'
       << "converged: " << (r.converged ? "true" : "false") << '\n'
       << "max_abs_f_window: " << format_real(r.max_abs_f_window) << '\n'
       << "max_abs_residual_window: " << format_real(r.max_abs_residual_window) << '\n'
       << "median_abs_fppp: " << format_real(r.median_abs_fppp) << '\n'
       << "onset_eta: " << format_real(r.onset_eta) << '\n';
}

} // namespace blasius
