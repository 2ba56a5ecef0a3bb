#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "czlab/bourgain.hpp"
#include "czlab/config.hpp"

namespace czlab {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitViolation = 2 };

struct PlotFile {
  std::string name;  // file name, relative to <output>/plotdata
  Table table;       // sweep parameter (s or t) in column 1
};

// Per-figure tables; deterministic order of files and rows.
std::vector<PlotFile> emit_plotdata(const ExperimentResult& r);

ExperimentResult run_experiment(const Config& c);

// Writes rows, summary.json and (optionally) plot data under c.output_dir().
// Returns the list of files written.
std::vector<std::string> write_outputs(const Config& c, const ExperimentResult& r, const std::string& timestamp);

// kExitViolation iff any hard inequality failed.
int exit_code(const ExperimentResult& r);

// Whole pipeline with exit-code mapping; messages go to `err`.
int run(const std::string& config_path, std::ostream& err);

}  // namespace czlab
