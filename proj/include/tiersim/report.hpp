// End-of-run reporting: per-interval CSV time series and a JSON summary,
// plus relative-throughput comparison between runs of the same trace.
#pragma once

#include <optional>
#include <string>

#include "tiersim/run_result.hpp"

namespace tiersim {

struct Summary {
  std::string policy;
  Nanos total_sim_ns = 0;
  std::uint64_t migration_bytes_up = 0;
  std::uint64_t migration_bytes_down = 0;
  std::uint64_t fast_accesses = 0;
  std::uint64_t slow_accesses = 0;
  std::uint64_t peak_rss_pages = 0;
  std::uint64_t trace_hash = 0;
  std::map<SiteId, Tier> final_site_tiers;
  std::optional<double> relative_throughput;
};

Summary make_summary(const RunResult& result);

/// baseline time / candidate time (higher = candidate faster). Both
/// summaries must come from the same trace.
double compare(const Summary& baseline, const Summary& candidate);

std::string intervals_to_csv(const std::vector<IntervalRecord>& intervals);
std::vector<IntervalRecord> intervals_from_csv(const std::string& text);

std::string summary_to_json(const Summary& summary);
std::string decisions_to_jsonl(const std::vector<MigrationDecision>& ds);

/// Atomic write: content goes to <path>.tmp, then renamed into place.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Writes <prefix>.intervals.csv and <prefix>.summary.json; online runs
/// also get <prefix>.decisions.jsonl.
void write_reports(const RunResult& result, const std::string& output_prefix);

}  // namespace tiersim
