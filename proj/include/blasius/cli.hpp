#pragma once

#include "blasius/analysis.hpp"
#include "blasius/optim.hpp"
#include "blasius/shooting.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blasius::cli {

enum class Mode { train, solve_oracle, compare, probe_negative, export_table };

std::optional<Mode> parse_mode(const std::string& s);
std::string to_string(Mode m);

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int divergence = 3;
inline constexpr int io = 4;
} // namespace exit_code

struct Paths {
    std::optional<std::filesystem::path> checkpoint_in;
    std::optional<std::filesystem::path> checkpoint_out;
    std::optional<std::filesystem::path> csv_out;
    std::optional<std::filesystem::path> plot_out;
    std::optional<std::filesystem::path> report_out;
};

struct GridSpec {
    double eta0 = 0.0;
    double eta_m = 8.0;
    std::size_t points = 100;
};

struct ExportSpec {
    double eta0 = 0.0;
    double eta1 = 8.0;
    std::size_t points = 801;
};

struct RunConfig {
    std::optional<Mode> mode;
    NetworkConfig network;
    AdamConfig adam;
    LbfgsConfig lbfgs;
    GridSpec grid;
    BoundaryVariant boundary = BoundaryVariant::derivative;
    std::optional<double> pin;
    ShootingOptions oracle;
    std::size_t oracle_stride = 10;  // every n-th RK4 row goes to the CSV
    ProbeConfig probe;
    ExportSpec export_spec;
    Paths paths;
};

/// Flat `key = value` lines with dotted section prefixes; `#` starts a comment.
/// Unknown keys and unparsable values raise ConfigError.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::filesystem::path& path);

/// Executes one mode, writing artifacts under `out_dir`. Throws on failure.
void execute(Mode mode, const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& out);

/// `<binary> <mode> --config <path> [--seed N] [--out DIR]`. Returns the
/// process exit status; failures print one `error: category=... message=...`
/// line on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace blasius::cli
