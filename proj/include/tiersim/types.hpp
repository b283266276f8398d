// Core vocabulary shared by every simulator component: memory tiers,
// allocation sites, cost constants, and tier capacity configuration.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tiersim {

using SiteId = std::uint32_t;
using ThreadId = std::uint32_t;
using ObjectId = std::uint64_t;
using ArenaId = std::uint32_t;
using Nanos = std::uint64_t;

/// Capacity sentinel: a tier without a page limit.
inline constexpr std::uint64_t kUnboundedPages =
    std::numeric_limits<std::uint64_t>::max();

enum class Tier : std::uint8_t { Fast, Slow };

constexpr Tier other_tier(Tier t) {
  return t == Tier::Fast ? Tier::Slow : Tier::Fast;
}

std::string_view tier_name(Tier t);
std::optional<Tier> tier_from_name(std::string_view name);

/// Identity of an allocation context: the allocating instruction plus up
/// to three layers of call-path context. The depth is informational; the
/// site id is the profiling key.
struct AllocationSite {
  SiteId site_id = 0;
  int context_depth = 1;
};

/// Latency and bookkeeping constants of the simulated platform.
struct CostModel {
  Nanos extra_ns_per_slower_access = 300;
  Nanos ns_per_page_moved = 2000;
  Nanos fast_read_ns = 100;
  Nanos slow_read_ns = 400;  // fast_read_ns + extra_ns_per_slower_access
  Nanos hw_page_fill_ns = 1000;
  std::uint64_t page_bytes = 4096;
  std::uint64_t sample_period = 512;
  Nanos interval_ns = 10'000'000'000;
  std::uint64_t promotion_threshold_bytes = 4ull << 20;
  double decay_factor = 1.0;

  std::uint64_t pages_for_bytes(std::uint64_t bytes) const {
    return (bytes + page_bytes - 1) / page_bytes;
  }
};

/// Page budgets of the two tiers. kUnboundedPages lifts the limit.
struct TierConfig {
  std::uint64_t fast_capacity_pages = kUnboundedPages;
  std::uint64_t slow_capacity_pages = kUnboundedPages;
};

enum class PolicyKind { FirstTouch, OfflineGuided, OnlineGuided, HwCache };
enum class Heuristic { Knapsack, Hotset, Thermos };

std::string_view policy_name(PolicyKind p);
std::optional<PolicyKind> policy_from_name(std::string_view name);
std::string_view heuristic_name(Heuristic h);
std::optional<Heuristic> heuristic_from_name(std::string_view name);

/// Invalid configuration, bad CLI usage. CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent trace input. CLI exit code 2.
struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runtime failure during simulation (e.g. memory exhaustion). Exit code 2.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checks every type invariant and returns the first violation by name,
/// or nullopt when the configuration is valid.
std::optional<std::string> validate_config(const CostModel& cost,
                                           const TierConfig& tiers);

}  // namespace tiersim
