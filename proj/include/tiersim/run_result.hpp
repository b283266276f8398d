#pragma once

#include <map>
#include <vector>

#include "tiersim/profiler.hpp"
#include "tiersim/tiering.hpp"
#include "tiersim/types.hpp"

namespace tiersim {

struct IntervalRecord {
  Nanos interval_end_ns = 0;
  std::uint64_t fast_accesses = 0;
  std::uint64_t slow_accesses = 0;
  std::uint64_t bytes_migrated_up = 0;
  std::uint64_t bytes_migrated_down = 0;
  double est_bandwidth_bytes_per_s = 0.0;
};

struct RunResult {
  PolicyKind policy = PolicyKind::FirstTouch;
  Nanos total_sim_ns = 0;
  std::vector<IntervalRecord> intervals;
  std::vector<MigrationDecision> decisions;  // online runs
  std::map<SiteId, Tier> final_site_tiers;
  ProfileSnapshot final_profile;  // runs with shared arenas
  std::uint64_t peak_rss_pages = 0;
  std::uint64_t pages_migrated_up = 0;
  std::uint64_t pages_migrated_down = 0;
  Nanos migration_ns = 0;  // clock charged to page moves
  std::uint64_t fast_accesses = 0;
  std::uint64_t slow_accesses = 0;
  std::uint64_t hw_hits = 0;    // hw-cache policy
  std::uint64_t hw_misses = 0;  // hw-cache policy
  std::uint64_t trace_hash = 0;
  std::uint64_t page_bytes = 4096;
};

}  // namespace tiersim
