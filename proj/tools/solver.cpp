// Command-line driver: solver --config <path> [--output-dir <path>]
//                              [--no-correction] [--quiet] [--threads N]
//
// Exit codes: 0 success, 1 I/O failure, 2 config error, 3 numerical abort.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bgk/bgk.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string step_tag(std::size_t step) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06zu", step);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D1V Boltzmann-BGK solver with conservative Maxwellian correction"};
  std::string config_path;
  std::string output_dir;
  bool no_correction = false;
  bool quiet = false;
  unsigned threads = 1;
  app.add_option("--config", config_path, "Run configuration (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--output-dir", output_dir, "Directory for CSV output (overrides output_dir)");
  app.add_flag("--no-correction", no_correction, "Use the plain Maxwellian in collisions");
  app.add_flag("--quiet", quiet, "Only report errors");
  app.add_option("--threads", threads, "Worker threads per sub-step")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  bgk::SolverConfig config;
  try {
    config = bgk::load_config(config_path);
  } catch (const bgk::ConfigError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const bgk::IoError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (no_correction) config.run.correction_enabled = false;
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (config.run.cfl > bgk::kCflWarnAbove)
    std::cerr << "warning: cfl = " << config.run.cfl << " is at the edge of the stable range\n";

  const std::filesystem::path out = config.output_dir;
  try {
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw bgk::IoError(out, ec.message());

    const auto grid = bgk::build_grid(config.grid);
    const auto started = std::chrono::steady_clock::now();
    const auto observer = [&](const bgk::Snapshot& s) {
      bgk::write_snapshot(s.field, s.time, out / ("pdf_" + step_tag(s.step) + ".csv"));
      bgk::write_moments(s.moments, s.field.grid(), s.time,
                         out / ("moments_" + step_tag(s.step) + ".csv"));
      if (!quiet) std::cout << "snapshot step " << s.step << " t = " << s.time << "\n";
    };
    const auto result = bgk::run(config, {threads}, observer);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    bgk::write_conservation(result.conservation, out / "conservation.csv");
    bgk::RunMetadata meta{config, result.timestepping, grid.dx, grid.dv, grid.v_max_abs,
                          elapsed.count()};
    bgk::write_metadata(meta, out / "metadata.json");

    if (!quiet) {
      double worst[3] = {0, 0, 0};
      for (const auto& r : result.conservation.records) {
        worst[0] = std::max(worst[0], r.drho);
        worst[1] = std::max(worst[1], r.dm);
        worst[2] = std::max(worst[2], r.dE);
      }
      std::cout << "steps " << result.timestepping.n_steps << ", dt "
                << bgk::format_real(result.timestepping.dt) << ", cfl "
                << bgk::format_real(result.timestepping.cfl_effective) << ", theta_half "
                << bgk::format_real(result.timestepping.theta_half) << "\n"
                << "max relative change: mass " << worst[0] << ", momentum " << worst[1]
                << ", energy " << worst[2] << "\n"
                << "wrote " << out.string() << " in " << elapsed.count() << " s\n";
    }
  } catch (const bgk::NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const bgk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bgk::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
