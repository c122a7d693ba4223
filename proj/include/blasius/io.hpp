#pragma once

#include "blasius/analysis.hpp"
#include "blasius/network.hpp"
#include "blasius/optim.hpp"
#include "blasius/shooting.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace blasius {

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decimal with 17 significant digits; parses back to the same double.
std::string format_real(double x);

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers never observe a truncated file.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

// Checkpoint:
//   blasius-pinn-checkpoint v1
//   <depth> <width> <seed>
//   <one parameter per line>
void write_checkpoint(std::ostream& os, const ParamVector& p);
ParamVector read_checkpoint(std::istream& is);
void save_checkpoint(const std::filesystem::path& path, const ParamVector& p);
ParamVector load_checkpoint(const std::filesystem::path& path);

/// CSV with header eta,f,fp,fpp,residual.
void write_solution_csv(std::ostream& os, const SolutionTable& t);
SolutionTable read_solution_csv(std::istream& is);

/// key: value lines.
void write_training_report(std::ostream& os, const TrainingReport& r);
/// phase,step,loss,grad_norm,step_length,lr; deterministic for a fixed seed.
void write_loss_curve_csv(std::ostream& os, const TrainingReport& r);

/// Header row of field names, one row of values.
void write_comparison_csv(std::ostream& os, const ComparisonReport& r);
ComparisonReport read_comparison_csv(std::istream& is);

void write_singularity_report(std::ostream& os, const SingularityReport& r);

} // namespace blasius
