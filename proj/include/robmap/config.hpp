#pragma once

// Run configuration: one JSON document describing the dataset, executor,
// grid, and diagnostic knobs. Missing fields take documented defaults;
// unknown keys are rejected by name; all invariants validate eagerly.

#include <string>

#include "robmap/analyze.hpp"
#include "robmap/exec.hpp"
#include "robmap/storage.hpp"
#include "robmap/sweep.hpp"

namespace robmap {

struct RunConfig {
  DatasetConfig dataset;
  ExecConfig exec;
  GridSpec grid;
  Tolerance tolerance;       // default: relative 1%
  double jump_factor = 3.0;  // discontinuity threshold J
  std::string outdir = "out";

  void validate() const;  // throws ConfigError
};

// Defaults for "{}": N = 2^20 permutation dataset, 17x17 rowid grid over
// both columns with the full plan catalog, relative tolerance 0.01, J = 3.
RunConfig parse_config(const std::string& json_text);

RunConfig read_config_file(const std::string& path);

}  // namespace robmap
