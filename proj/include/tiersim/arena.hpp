// Arena-based allocation model. Objects live in page-aligned arenas that
// are bound to one memory tier at a time; arenas are the unit of
// migration. Three layouts are supported: one shared arena per site
// (profiling runs), one arena per (thread, tier) pair (guided runs), and
// the hybrid private/shared scheme used online.
#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tiersim/types.hpp"

namespace tiersim {

enum class ArenaStrategy { PerSite, PerThreadTier, Hybrid };

enum class ArenaKind : std::uint8_t { ThreadPrivate, SiteShared, ThreadTier };

struct Arena {
  ArenaId id = 0;
  ArenaKind kind = ArenaKind::SiteShared;
  ThreadId thread = 0;          // ThreadPrivate / ThreadTier
  SiteId site = 0;              // SiteShared
  Tier tier_slot = Tier::Fast;  // ThreadTier key component
  // Tier the arena is assigned to. New pages land here; changed by remap.
  Tier current_tier = Tier::Fast;
  std::uint64_t resident_pages_fast = 0;
  std::uint64_t resident_pages_slow = 0;
  std::uint64_t next_page = 0;  // arena-local page cursor
  // Ordered for deterministic page-by-page remapping.
  std::set<ObjectId> live_objects;
};

struct ObjectRecord {
  ObjectId id = 0;
  SiteId site = 0;
  ThreadId thread = 0;
  std::uint64_t size_bytes = 0;
  ArenaId arena = 0;
  std::uint64_t first_page = 0;  // page offset within the arena
  std::uint64_t page_count = 0;
  // Pages [0, fast_page_prefix) are resident on the fast tier, the rest
  // on the slow tier. Partial remaps adjust the prefix.
  std::uint64_t fast_page_prefix = 0;
  // Global page ids, used by the hardware-cache model for frame indexing.
  std::uint64_t global_page_base = 0;
};

inline Tier page_tier(const ObjectRecord& obj, std::uint64_t page_index) {
  return page_index < obj.fast_page_prefix ? Tier::Fast : Tier::Slow;
}

struct RemapResult {
  std::uint64_t pages_moved = 0;
  std::uint64_t shortfall = 0;  // pages that did not fit on the target tier
};

/// Owns all arenas, live objects, per-site active-byte accounting, and
/// tier occupancy for one simulation run. Mutation is single-threaded,
/// driven by the event loop.
class ArenaManager {
 public:
  ArenaManager(ArenaStrategy strategy, const CostModel& cost,
               const TierConfig& tiers);

  /// Places one object. `placement` is the tier resolved by the driver's
  /// policy; the hybrid strategy may override it (thread-private data is
  /// pinned fast when it fits, objects joining an existing shared arena
  /// follow the arena's tier and spill to the other one when full).
  const ObjectRecord& allocate(const AllocationSite& site, ThreadId thread,
                               std::uint64_t size_bytes, Tier placement);

  /// Releases an object; returns the number of pages released.
  std::uint64_t free_object(ObjectId id);

  /// Moves up to `max_pages` resident pages of the arena to `target` and
  /// rebinds the arena there. Pages that do not fit are reported as
  /// shortfall and stay where they were.
  RemapResult remap_arena(ArenaId id, Tier target,
                          std::uint64_t max_pages = kUnboundedPages);

  /// (fast, slow) resident page counts of one arena. O(1).
  std::pair<std::uint64_t, std::uint64_t> rss_pages(ArenaId id) const;

  /// Cumulative live bytes allocated from a site; 0 for unseen sites.
  std::uint64_t active_site_bytes(SiteId site) const;

  /// First-touch placement: fast if it fits, else slow, else SimError.
  Tier resolve_first_touch(std::uint64_t pages) const;

  std::uint64_t free_pages(Tier t) const;
  std::uint64_t used_pages(Tier t) const {
    return t == Tier::Fast ? used_fast_ : used_slow_;
  }
  std::uint64_t live_pages() const { return used_fast_ + used_slow_; }

  /// Fast-tier pages currently pinned by thread-private arenas.
  std::uint64_t private_fast_pages() const;

  const Arena& arena(ArenaId id) const;
  const ObjectRecord& object(ObjectId id) const;
  const std::vector<Arena>& arenas() const { return arenas_; }
  std::optional<ArenaId> find_site_arena(SiteId site) const;
  ArenaStrategy strategy() const { return strategy_; }

 private:
  Arena& get_or_create_site_arena(SiteId site, Tier placement);
  Arena& get_or_create_private_arena(ThreadId thread);
  Arena& get_or_create_thread_tier_arena(ThreadId thread, Tier tier);
  Arena& new_arena(ArenaKind kind, ThreadId thread, SiteId site, Tier tier);

  ArenaStrategy strategy_;
  CostModel cost_;
  TierConfig tiers_;
  std::vector<Arena> arenas_;
  std::map<SiteId, ArenaId> site_arenas_;
  std::map<ThreadId, ArenaId> private_arenas_;
  std::map<std::pair<ThreadId, std::uint8_t>, ArenaId> thread_tier_arenas_;
  std::map<ObjectId, ObjectRecord> objects_;  // live objects only
  std::map<SiteId, std::uint64_t> site_active_bytes_;
  std::uint64_t used_fast_ = 0;
  std::uint64_t used_slow_ = 0;
  ObjectId next_object_id_ = 1;
  std::uint64_t next_global_page_ = 0;
};

}  // namespace tiersim
