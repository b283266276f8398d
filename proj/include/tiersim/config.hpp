// Run configuration file: a single JSON document with top-level keys
// cost_model, tier_config, policy, heuristic, seed, trace_path,
// output_prefix. Unknown keys are an error.
#pragma once

#include <optional>
#include <string>

#include "tiersim/sim.hpp"
#include "tiersim/types.hpp"

namespace tiersim {

struct FileConfig {
  CostModel cost;
  TierConfig tiers;
  // Fast capacity as a percentage of measured peak RSS; resolved by the
  // caller via measure_peak_rss. Mutually exclusive with explicit pages.
  std::optional<double> fast_capacity_pct;
  PolicyKind policy = PolicyKind::FirstTouch;
  Heuristic heuristic = Heuristic::Thermos;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string output_prefix = "tiersim-out";
  bool profile_reads_only = false;  // CLI flag, not a file key
};

FileConfig parse_config_json(const std::string& text);

/// Validates and converts; fast_capacity_pct must already be resolved.
RunConfig to_run_config(const FileConfig& config);

}  // namespace tiersim
