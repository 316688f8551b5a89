// robmap: measure, diagnose, and render the robustness of forced
// query-execution plans over a deterministic synthetic dataset.
//
// Exit codes: 0 success, 1 usage/config error, 2 validation failure,
// 3 I/O failure.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "robmap/pipeline.hpp"

namespace {

robmap::RunConfig load_config(const std::optional<std::string>& path) {
  if (!path.has_value()) return robmap::parse_config("{}");
  return robmap::read_config_file(*path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "robmap: robustness maps for query execution.\n"
      "Runs forced query plans over selectivity grids against a deterministic\n"
      "synthetic dataset, derives robustness diagnostics, and renders SVG maps.\n"
      "Equivalence tolerance defaults to 1% relative unless the config says\n"
      "otherwise."};
  app.require_subcommand(1);

  std::string config_path;
  std::string costs_path;
  std::string out_path;
  std::string outdir;
  std::string mode_name;
  std::string plan_name;

  CLI::App* sweep = app.add_subcommand("sweep", "run every plan at every grid point, write CSV");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "derive the robustness report from a CSV");
  analyze->add_option("--costs", costs_path, "surface CSV from `sweep`")->required();
  analyze->add_option("--config", config_path,
                      "JSON config file (tolerance, default 1% relative; jump factor)")
      ->required();
  analyze->add_option("--out", out_path, "output JSON path")->required();

  CLI::App* render = app.add_subcommand("render", "render one SVG map from a CSV");
  render->add_option("--costs", costs_path, "surface CSV from `sweep`")->required();
  render->add_option("--mode", mode_name, "curve | absolute | relative | optimality")
      ->required();
  render->add_option("--plan", plan_name, "plan name for absolute/relative maps");
  render->add_option("--config", config_path,
                     "JSON config file (tolerance for optimality mode; default 1% relative)");
  render->add_option("--out", out_path, "output SVG path")->required();

  CLI::App* all = app.add_subcommand("all", "sweep + analyze + render everything");
  all->add_option("--config", config_path, "JSON config file")->required();
  all->add_option("--outdir", outdir, "output directory (default from config, else ./out)");

  try {
    app.parse(argc, argv);

    if (sweep->parsed()) {
      robmap::cmd_sweep(robmap::read_config_file(config_path), out_path);
    } else if (analyze->parsed()) {
      robmap::cmd_analyze(costs_path, robmap::read_config_file(config_path), out_path);
    } else if (render->parsed()) {
      const auto mode = robmap::render_mode_from_name(mode_name);
      if (!mode.has_value()) {
        throw robmap::ConfigError("unknown render mode \"" + mode_name + "\"");
      }
      std::optional<std::string> plan;
      if (!plan_name.empty()) plan = plan_name;
      robmap::cmd_render(costs_path, *mode, plan,
                         load_config(config_path.empty()
                                         ? std::optional<std::string>{}
                                         : std::optional<std::string>{config_path}),
                         out_path);
    } else if (all->parsed()) {
      const robmap::RunConfig cfg = robmap::read_config_file(config_path);
      robmap::cmd_all(cfg, outdir.empty() ? cfg.outdir : outdir);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const robmap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const robmap::ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const robmap::IoError& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
