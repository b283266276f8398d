#include "tiersim/types.hpp"

#include <bit>
#include <cmath>

namespace tiersim {

std::string_view tier_name(Tier t) {
  return t == Tier::Fast ? "FAST" : "SLOW";
}

std::optional<Tier> tier_from_name(std::string_view name) {
  if (name == "FAST" || name == "fast") return Tier::Fast;
  if (name == "SLOW" || name == "slow") return Tier::Slow;
  return std::nullopt;
}

std::string_view policy_name(PolicyKind p) {
  switch (p) {
    case PolicyKind::FirstTouch: return "first-touch";
    case PolicyKind::OfflineGuided: return "offline";
    case PolicyKind::OnlineGuided: return "online";
    case PolicyKind::HwCache: return "hw-cache";
  }
  return "?";
}

std::optional<PolicyKind> policy_from_name(std::string_view name) {
  if (name == "first-touch") return PolicyKind::FirstTouch;
  if (name == "offline") return PolicyKind::OfflineGuided;
  if (name == "online") return PolicyKind::OnlineGuided;
  if (name == "hw-cache") return PolicyKind::HwCache;
  return std::nullopt;
}

std::string_view heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::Knapsack: return "knapsack";
    case Heuristic::Hotset: return "hotset";
    case Heuristic::Thermos: return "thermos";
  }
  return "?";
}

std::optional<Heuristic> heuristic_from_name(std::string_view name) {
  if (name == "knapsack") return Heuristic::Knapsack;
  if (name == "hotset") return Heuristic::Hotset;
  if (name == "thermos") return Heuristic::Thermos;
  return std::nullopt;
}

std::optional<std::string> validate_config(const CostModel& cost,
                                           const TierConfig& tiers) {
  (void)tiers;  // page counts are unsigned; any value is a legal capacity
  if (cost.extra_ns_per_slower_access == 0)
    return "extra_ns_per_slower_access must be > 0";
  if (cost.ns_per_page_moved == 0) return "ns_per_page_moved must be > 0";
  if (cost.fast_read_ns == 0) return "fast_read_ns must be > 0";
  if (cost.slow_read_ns == 0) return "slow_read_ns must be > 0";
  if (cost.hw_page_fill_ns == 0) return "hw_page_fill_ns must be > 0";
  if (!std::has_single_bit(cost.page_bytes))
    return "page_bytes must be a power of two";
  if (cost.sample_period == 0) return "sample_period must be >= 1";
  if (cost.interval_ns == 0) return "interval_ns must be > 0";
  if (!(cost.decay_factor >= 0.0 && cost.decay_factor <= 1.0))
    return "decay_factor must be in [0, 1]";
  return std::nullopt;
}

}  // namespace tiersim
