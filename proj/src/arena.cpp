#include "tiersim/arena.hpp"

#include <algorithm>
#include <cassert>

namespace tiersim {

ArenaManager::ArenaManager(ArenaStrategy strategy, const CostModel& cost,
                           const TierConfig& tiers)
    : strategy_(strategy), cost_(cost), tiers_(tiers) {}

Arena& ArenaManager::new_arena(ArenaKind kind, ThreadId thread, SiteId site,
                               Tier tier) {
  Arena a;
  a.id = static_cast<ArenaId>(arenas_.size());
  a.kind = kind;
  a.thread = thread;
  a.site = site;
  a.tier_slot = tier;
  a.current_tier = tier;
  arenas_.push_back(std::move(a));
  return arenas_.back();
}

Arena& ArenaManager::get_or_create_site_arena(SiteId site, Tier placement) {
  auto it = site_arenas_.find(site);
  if (it != site_arenas_.end()) return arenas_[it->second];
  Arena& a = new_arena(ArenaKind::SiteShared, 0, site, placement);
  site_arenas_.emplace(site, a.id);
  return a;
}

Arena& ArenaManager::get_or_create_private_arena(ThreadId thread) {
  auto it = private_arenas_.find(thread);
  if (it != private_arenas_.end()) return arenas_[it->second];
  Arena& a = new_arena(ArenaKind::ThreadPrivate, thread, 0, Tier::Fast);
  private_arenas_.emplace(thread, a.id);
  return a;
}

Arena& ArenaManager::get_or_create_thread_tier_arena(ThreadId thread,
                                                     Tier tier) {
  auto key = std::make_pair(thread, static_cast<std::uint8_t>(tier));
  auto it = thread_tier_arenas_.find(key);
  if (it != thread_tier_arenas_.end()) return arenas_[it->second];
  Arena& a = new_arena(ArenaKind::ThreadTier, thread, 0, tier);
  thread_tier_arenas_.emplace(key, a.id);
  return a;
}

const ObjectRecord& ArenaManager::allocate(const AllocationSite& site,
                                           ThreadId thread,
                                           std::uint64_t size_bytes,
                                           Tier placement) {
  if (size_bytes == 0) throw SimError("allocation size must be > 0");
  const std::uint64_t pages = cost_.pages_for_bytes(size_bytes);

  Arena* arena = nullptr;
  Tier obj_tier = placement;
  switch (strategy_) {
    case ArenaStrategy::PerSite:
      arena = &get_or_create_site_arena(site.site_id, placement);
      break;
    case ArenaStrategy::PerThreadTier:
      arena = &get_or_create_thread_tier_arena(thread, placement);
      break;
    case ArenaStrategy::Hybrid: {
      // Route by the site's active bytes before this request: strictly
      // above the threshold goes to the site's shared arena, otherwise to
      // the caller thread's private arena.
      const std::uint64_t prior = active_site_bytes(site.site_id);
      if (prior > cost_.promotion_threshold_bytes) {
        arena = &get_or_create_site_arena(site.site_id, placement);
        obj_tier = arena->current_tier;
        if (free_pages(obj_tier) < pages) obj_tier = other_tier(obj_tier);
      } else {
        arena = &get_or_create_private_arena(thread);
        obj_tier = free_pages(Tier::Fast) >= pages ? Tier::Fast : Tier::Slow;
      }
      break;
    }
  }

  if (free_pages(obj_tier) < pages)
    throw SimError("memory exhausted: " + std::to_string(pages) +
                   " pages requested with both tiers full");

  ObjectRecord rec;
  rec.id = next_object_id_++;
  rec.site = site.site_id;
  rec.thread = thread;
  rec.size_bytes = size_bytes;
  rec.arena = arena->id;
  rec.first_page = arena->next_page;
  rec.page_count = pages;
  rec.fast_page_prefix = obj_tier == Tier::Fast ? pages : 0;
  rec.global_page_base = next_global_page_;

  arena->next_page += pages;
  next_global_page_ += pages;
  arena->live_objects.insert(rec.id);
  if (obj_tier == Tier::Fast) {
    arena->resident_pages_fast += pages;
    used_fast_ += pages;
  } else {
    arena->resident_pages_slow += pages;
    used_slow_ += pages;
  }
  site_active_bytes_[site.site_id] += size_bytes;

  auto [it, inserted] = objects_.emplace(rec.id, std::move(rec));
  assert(inserted);
  return it->second;
}

std::uint64_t ArenaManager::free_object(ObjectId id) {
  auto it = objects_.find(id);
  if (it == objects_.end())
    throw SimError("unknown object " + std::to_string(id) +
                   " (never allocated or already freed)");
  const ObjectRecord& rec = it->second;
  Arena& a = arenas_[rec.arena];
  const std::uint64_t fast = rec.fast_page_prefix;
  const std::uint64_t slow = rec.page_count - fast;
  a.resident_pages_fast -= fast;
  a.resident_pages_slow -= slow;
  used_fast_ -= fast;
  used_slow_ -= slow;
  a.live_objects.erase(id);
  auto ledger = site_active_bytes_.find(rec.site);
  assert(ledger != site_active_bytes_.end() &&
         ledger->second >= rec.size_bytes);
  ledger->second -= rec.size_bytes;
  const std::uint64_t released = rec.page_count;
  objects_.erase(it);
  return released;
}

RemapResult ArenaManager::remap_arena(ArenaId id, Tier target,
                                      std::uint64_t max_pages) {
  if (id >= arenas_.size())
    throw SimError("unknown arena " + std::to_string(id));
  Arena& a = arenas_[id];

  const std::uint64_t movable =
      target == Tier::Fast ? a.resident_pages_slow : a.resident_pages_fast;
  const std::uint64_t want = std::min(movable, max_pages);
  const std::uint64_t moved = std::min(want, free_pages(target));

  std::uint64_t remaining = moved;
  for (ObjectId oid : a.live_objects) {
    if (remaining == 0) break;
    ObjectRecord& obj = objects_.at(oid);
    if (target == Tier::Fast) {
      const std::uint64_t k =
          std::min(remaining, obj.page_count - obj.fast_page_prefix);
      obj.fast_page_prefix += k;
      remaining -= k;
    } else {
      const std::uint64_t k = std::min(remaining, obj.fast_page_prefix);
      obj.fast_page_prefix -= k;
      remaining -= k;
    }
  }
  assert(remaining == 0);

  if (target == Tier::Fast) {
    a.resident_pages_fast += moved;
    a.resident_pages_slow -= moved;
    used_fast_ += moved;
    used_slow_ -= moved;
  } else {
    a.resident_pages_fast -= moved;
    a.resident_pages_slow += moved;
    used_fast_ -= moved;
    used_slow_ += moved;
  }
  a.current_tier = target;
  return {moved, want - moved};
}

std::pair<std::uint64_t, std::uint64_t> ArenaManager::rss_pages(
    ArenaId id) const {
  if (id >= arenas_.size())
    throw SimError("unknown arena " + std::to_string(id));
  const Arena& a = arenas_[id];
  return {a.resident_pages_fast, a.resident_pages_slow};
}

std::uint64_t ArenaManager::active_site_bytes(SiteId site) const {
  auto it = site_active_bytes_.find(site);
  return it == site_active_bytes_.end() ? 0 : it->second;
}

Tier ArenaManager::resolve_first_touch(std::uint64_t pages) const {
  if (free_pages(Tier::Fast) >= pages) return Tier::Fast;
  if (free_pages(Tier::Slow) >= pages) return Tier::Slow;
  throw SimError("memory exhausted: " + std::to_string(pages) +
                 " pages requested with both tiers full");
}

std::uint64_t ArenaManager::free_pages(Tier t) const {
  const std::uint64_t cap = t == Tier::Fast ? tiers_.fast_capacity_pages
                                            : tiers_.slow_capacity_pages;
  if (cap == kUnboundedPages) return kUnboundedPages;
  const std::uint64_t used = used_pages(t);
  return cap > used ? cap - used : 0;
}

std::uint64_t ArenaManager::private_fast_pages() const {
  std::uint64_t total = 0;
  for (const auto& [thread, id] : private_arenas_)
    total += arenas_[id].resident_pages_fast;
  return total;
}

const Arena& ArenaManager::arena(ArenaId id) const {
  if (id >= arenas_.size())
    throw SimError("unknown arena " + std::to_string(id));
  return arenas_[id];
}

const ObjectRecord& ArenaManager::object(ObjectId id) const {
  auto it = objects_.find(id);
  if (it == objects_.end())
    throw SimError("unknown object " + std::to_string(id) +
                   " (never allocated or already freed)");
  return it->second;
}

std::optional<ArenaId> ArenaManager::find_site_arena(SiteId site) const {
  auto it = site_arenas_.find(site);
  if (it == site_arenas_.end()) return std::nullopt;
  return it->second;
}

}  // namespace tiersim
