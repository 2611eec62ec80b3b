#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pa/config.hpp"
#include "pa/table.hpp"

namespace pa {

// Per-invocation knobs, mirroring the CLI flags. For `scan`, --v-min selects
// the molecular level and --nt-max the trap level.
struct CmdOptions {
  std::string out_dir = ".";
  int v_min = 33;
  int v_max = 39;
  int nt_max = 2;
  double a_min_nm = -6.0;
  double a_max_nm = 6.0;
  int a_steps = 61;
  std::optional<PhotonFactor> factor_override;
};

// Each command returns the tables it wrote (first entry is the main CSV) and
// writes them under opts.out_dir. File names are fixed per command.
std::vector<ResultTable> cmd_trap_levels(const RunConfig& cfg, const CmdOptions& opts);
std::vector<ResultTable> cmd_molecular_levels(const RunConfig& cfg, const CmdOptions& opts);
std::vector<ResultTable> cmd_fc(const RunConfig& cfg, const CmdOptions& opts);
std::vector<ResultTable> cmd_linewidths(const RunConfig& cfg, const CmdOptions& opts);
std::vector<ResultTable> cmd_scan(const RunConfig& cfg, const CmdOptions& opts);

// Calibrates the inner boundary per the config (fixed wall honored) and
// solves the levels with labels in [v_min, v_max], deepest first.
std::vector<VibLevel> solve_labeled_levels(const RunConfig& cfg, int v_min, int v_max,
                                           PotentialModel* calibrated_out = nullptr);

}  // namespace pa
