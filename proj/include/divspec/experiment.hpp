#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "divspec/bounds.hpp"
#include "divspec/eigensolve.hpp"
#include "divspec/fields.hpp"
#include "divspec/geometry.hpp"
#include "divspec/report_io.hpp"

namespace divspec {

enum class SpectrumSource { fem, radial_oracle };

struct ExperimentConfig {
  DomainSpec domain = DomainSpec::rectangle(1.0, 1.0);
  DriftField drift = DriftField::constant(0.0);
  TensorField tensor = TensorField::identity();
  double alpha = 0.0;
  int resolution = 32;
  int k = 8;
  bool vector_system = false;
  SpectrumSource source = SpectrumSource::fem;
  int l_max = 12;
  int grid_size = 2000;
  SolverOptions solver;
  std::vector<std::string> suite;
  std::string output_dir = "out";
  bool emit_plots = false;
  double slack = 1e-9;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Schema violation; `path` is the dotted field path, e.g. "domain.radius".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  std::string path;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& file);

// Known suite ids, in the order reports are emitted.
const std::vector<std::string>& suite_ids();

struct ExperimentResult {
  std::vector<SpectrumRow> spectrum;
  std::vector<BoundReport> reports;
  ReportConstants constants;
  double tolerance = 0.0;

  bool all_satisfied() const;
  bool residuals_ok() const;
  // 0 when every report holds and every residual is within tolerance, 2 otherwise.
  int exit_code() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// spectrum.csv, bounds.csv, constants.json and margins.svg when plots is set.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir, bool plots);

const std::vector<std::string>& builtin_names();
// Throws std::invalid_argument listing the available cases.
ExperimentConfig builtin_config(const std::string& name);

// Writes A.txt and M.txt (and K.txt, C.txt for vector systems) in coordinate
// format into `dir`. Returns the file names written.
std::vector<std::string> dump_matrices(const ExperimentConfig& config, const std::filesystem::path& dir);

}  // namespace divspec
