// divspec: run eigenvalue-bound experiments from a JSON config or a builtin case.
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "divspec/experiment.hpp"

namespace {

int run_and_write(const divspec::ExperimentConfig& cfg, const std::string& out, bool plots) {
  const divspec::ExperimentResult result = divspec::run_experiment(cfg);
  divspec::write_outputs(result, out, plots);
  int violated = 0;
  for (const auto& r : result.reports)
    if (!r.satisfied) ++violated;
  std::cout << result.spectrum.size() << " modes, " << result.reports.size() << " reports, " << violated
            << " violated";
  if (!result.residuals_ok()) std::cout << ", residuals above tol " << result.tolerance;
  std::cout << "; wrote " << out << '\n';
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of weighted divergence-form operators and universal eigenvalue bounds"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool plots = false;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (defaults to output_dir from the config)");
  run->add_flag("--plots", plots, "Also write margins.svg");

  std::string case_name;
  std::string builtin_out;
  bool builtin_plots = false;
  auto* builtin = app.add_subcommand("builtin", "Run a pinned acceptance scenario");
  builtin->add_option("case", case_name, "Case name")->required();
  builtin->add_option("--out", builtin_out, "Output directory")->required();
  builtin->add_flag("--plots", builtin_plots, "Also write margins.svg");

  std::string dump_config;
  std::string dump_out;
  auto* dump = app.add_subcommand("dump-matrices", "Write assembled operators in coordinate format");
  dump->add_option("--config", dump_config, "Config file")->required();
  dump->add_option("--out", dump_out, "Output directory (defaults to output_dir from the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      const auto cfg = divspec::load_config(config_path);
      return run_and_write(cfg, out_dir.empty() ? cfg.output_dir : out_dir, plots || cfg.emit_plots);
    }
    if (builtin->parsed()) {
      const auto cfg = divspec::builtin_config(case_name);
      return run_and_write(cfg, builtin_out, builtin_plots);
    }
    if (dump->parsed()) {
      const auto cfg = divspec::load_config(dump_config);
      const std::string dir = dump_out.empty() ? cfg.output_dir : dump_out;
      for (const auto& f : divspec::dump_matrices(cfg, dir)) std::cout << dir << '/' << f << '\n';
      return 0;
    }
  } catch (const divspec::ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
