// Trace-driven simulation: advances a virtual clock over trace events,
// applies the active placement policy, enforces tier capacities, and
// orchestrates the two-pass offline flow.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tiersim/recommend.hpp"
#include "tiersim/run_result.hpp"
#include "tiersim/trace.hpp"
#include "tiersim/types.hpp"

namespace tiersim {

struct RunConfig {
  CostModel cost;
  TierConfig tiers;
  PolicyKind policy = PolicyKind::FirstTouch;
  Heuristic heuristic = Heuristic::Thermos;
  std::uint64_t seed = 0;
  bool profile_reads_only = false;
};

struct TraceData {
  std::vector<TraceEvent> events;
  std::uint64_t hash = 0;
};

TraceData load_trace(const std::string& text);
TraceData load_trace_file(const std::string& path);

/// Fast tier as a page-granular direct-mapped cache over slow-homed data.
class HwDirectMappedCache {
 public:
  HwDirectMappedCache(std::uint64_t frames, const CostModel& cost);

  struct Access {
    bool hit = false;
    Nanos charged_ns = 0;
  };
  Access access(std::uint64_t global_page);

  std::uint64_t resident_pages() const { return frame_to_page_.size(); }

 private:
  std::uint64_t frames_;
  CostModel cost_;
  std::unordered_map<std::uint64_t, std::uint64_t> frame_to_page_;
};

/// Runs one policy over the trace. OfflineGuided runs the two-pass flow
/// internally and returns the guided pass.
RunResult run_policy(const RunConfig& config, const TraceData& trace);

struct OfflinePair {
  RunResult profile_run;
  RunResult guided_run;
  TierRecommendation recommendation;
};

/// Pass 1 profiles with per-site arenas; recommendations are computed
/// once from the full-run profile; pass 2 replays with per-thread-tier
/// arenas, placing each allocation at its site's recommended tier.
OfflinePair run_offline_pair(const RunConfig& config, const TraceData& trace);

/// Maximum simultaneous resident pages with unbounded capacity; used to
/// resolve percentage-based fast-tier configurations.
std::uint64_t measure_peak_rss(const TraceData& trace, const CostModel& cost);

struct SweepRow {
  std::string policy;
  double pct = 0;
  double relative_throughput = 0;
};

/// One run per (policy, pct of peak RSS), each compared against an
/// all-fast baseline of the same trace.
std::vector<SweepRow> run_sweep(const RunConfig& base, const TraceData& trace,
                                const std::vector<double>& pcts,
                                const std::vector<PolicyKind>& policies);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace tiersim
