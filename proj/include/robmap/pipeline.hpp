#pragma once

// Command implementations behind the CLI: sweep -> CSV, analyze -> JSON
// report, render -> SVG, and the full pipeline. Library entry points so
// tests can drive them without a process boundary.

#include <optional>
#include <string>

#include "robmap/config.hpp"
#include "robmap/sweep.hpp"

namespace robmap {

enum class RenderMode : std::uint8_t { kCurve, kAbsolute, kRelative, kOptimality };

std::optional<RenderMode> render_mode_from_name(std::string_view name);

// Builds the dataset, runs the sweep, hard-fails on any cross-plan result
// mismatch (ValidationError), and writes the surface CSV.
void cmd_sweep(const RunConfig& config, const std::string& out_path);

// Reads a surface CSV and writes the robustness report JSON.
void cmd_analyze(const std::string& costs_path, const RunConfig& config,
                 const std::string& out_path);

// Reads a surface CSV and writes one SVG. `plan` is required for the
// per-plan absolute and relative modes.
void cmd_render(const std::string& costs_path, RenderMode mode,
                const std::optional<std::string>& plan, const RunConfig& config,
                const std::string& out_path);

// Full pipeline into outdir: surface.csv, report.json, and one SVG per
// render mode (per-plan absolute and relative maps on 2-D grids).
void cmd_all(const RunConfig& config, const std::string& outdir);

// Helpers shared with tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
CostSurface sweep_from_config(const RunConfig& config);

}  // namespace robmap
