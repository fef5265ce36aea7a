// Batch front-end: `qudit_emu run --config file.yaml` and `qudit_emu plot --in dir`.
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ququart/harness/plots.hpp"
#include "ququart/harness/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int run_command(const std::string& config, const std::optional<std::string>& out,
                const std::optional<std::uint64_t>& seed, const std::optional<int>& jobs) {
  ququart::RunConfig cfg = ququart::load_run_config(config);
  if (out) cfg.output = *out;
  if (seed) cfg.seed = *seed;
  if (jobs) {
    if (*jobs < 1) throw ququart::ConfigError("--jobs must be positive");
    cfg.jobs = *jobs;
  }
  const auto art = ququart::run_experiment(cfg);
  std::printf("%s\n", fmt::format("{}: {} files in {}", to_string(cfg.experiment), art.files.size(), art.directory).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-level transmon emulator of a two-qubit processor"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  auto* run = app.add_subcommand("run", "run the experiment described by a YAML config");
  run->add_option("--config", config, "run configuration (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (overrides the config)");
  run->add_option("--seed", seed, "master seed (overrides the config)");
  run->add_option("--jobs", jobs, "worker threads (results do not depend on it)");

  std::string in_dir;
  auto* plot = app.add_subcommand("plot", "render SVG figures from the result files of a run");
  plot->add_option("--in", in_dir, "run output directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return run_command(config, out, seed, jobs);
    for (const auto& f : ququart::emit_plots(in_dir)) std::printf("%s\n", f.c_str());
    return 0;
  } catch (const ququart::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const ququart::NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
