// Online break-even migration: each interval the engine compares the
// rental cost of leaving mis-tiered data in place against the one-time
// purchase cost of remapping it, and enforces the current tier
// recommendations once rental exceeds purchase.
#pragma once

#include <vector>

#include "tiersim/arena.hpp"
#include "tiersim/profiler.hpp"
#include "tiersim/recommend.hpp"
#include "tiersim/types.hpp"

namespace tiersim {

struct MigrationDecision {
  Nanos when_ns = 0;
  Nanos rental_cost_ns = 0;
  Nanos purchase_cost_ns = 0;
  bool migrate = false;  // rental_cost_ns > purchase_cost_ns
  std::uint64_t pages_up = 0;
  std::uint64_t pages_down = 0;
  std::uint64_t shortfall_pages = 0;  // promotions that did not fit
  std::vector<SiteId> fast_sites_after;  // filled when migrate
};

/// (a - b) * extra_ns_per_slower_access, where a sums estimated accesses
/// of sites placed slow but recommended fast and b the converse; zero
/// when a <= b.
Nanos rental_cost_ns(const ProfileSnapshot& prof,
                     const TierRecommendation& recs, const CostModel& cost);

/// Pages resident on the wrong tier (both directions) times
/// ns_per_page_moved. Partial grants count min(resident, granted) toward
/// the up move; the remainder stays.
Nanos purchase_cost_ns(const ProfileSnapshot& prof,
                       const TierRecommendation& recs, const CostModel& cost);

class TieringEngine {
 public:
  TieringEngine(ArenaManager& arenas, Profiler& profiler,
                const CostModel& cost, const TierConfig& tiers,
                Heuristic heuristic);

  /// Snapshot, recommend, compare costs; enforce when rental exceeds
  /// purchase. Capacity shortfalls are recorded in the decision.
  MigrationDecision maybe_migrate(Nanos now);

  /// One interval step: maybe_migrate, then profile reweighting (an
  /// identity under the default decay factor of 1).
  MigrationDecision online_step(Nanos now);

  /// Applies recommendations in two phases: demote every shared arena
  /// recommended slow first, then promote recommended-fast arenas in
  /// density order until done or the fast tier fills. Returns
  /// (pages_down, pages_up); unsatisfied promotion pages go to
  /// *shortfall.
  std::pair<std::uint64_t, std::uint64_t> enforce_tier_recs(
      const ProfileSnapshot& prof, const TierRecommendation& recs,
      std::uint64_t* shortfall);

 private:
  ArenaManager& arenas_;
  Profiler& profiler_;
  CostModel cost_;
  TierConfig tiers_;
  Heuristic heuristic_;
};

}  // namespace tiersim
