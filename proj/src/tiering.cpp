#include "tiersim/tiering.hpp"

#include <algorithm>

namespace tiersim {

Nanos rental_cost_ns(const ProfileSnapshot& prof,
                     const TierRecommendation& recs, const CostModel& cost) {
  std::uint64_t a = 0;  // accesses stuck slow that should be fast
  std::uint64_t b = 0;  // accesses fast that should be slow
  for (const SiteProfile& p : prof.sites) {
    const Tier rec = recs.tier_for(p.site);
    const std::uint64_t est = estimated_accesses(p, prof.sample_period);
    if (p.current_tier == Tier::Slow && rec == Tier::Fast)
      a += est;
    else if (p.current_tier == Tier::Fast && rec == Tier::Slow)
      b += est;
  }
  if (a <= b) return 0;
  return (a - b) * cost.extra_ns_per_slower_access;
}

Nanos purchase_cost_ns(const ProfileSnapshot& prof,
                       const TierRecommendation& recs, const CostModel& cost) {
  std::uint64_t pages_to_move = 0;
  for (const SiteProfile& p : prof.sites) {
    const Tier rec = recs.tier_for(p.site);
    if (rec == p.current_tier) continue;
    if (rec == Tier::Fast)
      pages_to_move += std::min(p.resident_pages, recs.granted_for(p.site));
    else
      pages_to_move += p.resident_pages;
  }
  return pages_to_move * cost.ns_per_page_moved;
}

TieringEngine::TieringEngine(ArenaManager& arenas, Profiler& profiler,
                             const CostModel& cost, const TierConfig& tiers,
                             Heuristic heuristic)
    : arenas_(arenas),
      profiler_(profiler),
      cost_(cost),
      tiers_(tiers),
      heuristic_(heuristic) {}

std::pair<std::uint64_t, std::uint64_t> TieringEngine::enforce_tier_recs(
    const ProfileSnapshot& prof, const TierRecommendation& recs,
    std::uint64_t* shortfall) {
  std::uint64_t down = 0;
  std::uint64_t up = 0;

  // Phase 1: cold data leaves the fast tier to make space.
  for (const SiteProfile& p : prof.sites) {
    if (recs.tier_for(p.site) != Tier::Slow) continue;
    auto arena_id = arenas_.find_site_arena(p.site);
    if (!arena_id) continue;
    RemapResult r = arenas_.remap_arena(*arena_id, Tier::Slow);
    down += r.pages_moved;
    if (shortfall) *shortfall += r.shortfall;
  }

  // Phase 2: promote in density order, hottest first.
  std::vector<SiteItem> promote;
  for (const SiteProfile& p : prof.sites) {
    if (recs.tier_for(p.site) != Tier::Fast) continue;
    promote.push_back({p.site, estimated_accesses(p, prof.sample_period),
                       p.resident_pages});
  }
  sort_by_density(promote);
  for (const SiteItem& item : promote) {
    auto arena_id = arenas_.find_site_arena(item.site);
    if (!arena_id) continue;
    const Arena& a = arenas_.arena(*arena_id);
    const std::uint64_t target_fast =
        std::min(a.resident_pages_fast + a.resident_pages_slow,
                 recs.granted_for(item.site));
    const std::uint64_t need = target_fast > a.resident_pages_fast
                                   ? target_fast - a.resident_pages_fast
                                   : 0;
    RemapResult r = arenas_.remap_arena(*arena_id, Tier::Fast, need);
    up += r.pages_moved;
    if (shortfall) *shortfall += r.shortfall;
  }
  return {down, up};
}

MigrationDecision TieringEngine::maybe_migrate(Nanos now) {
  const ProfileSnapshot prof = profiler_.snapshot(now);
  const TierRecommendation recs =
      recommend(prof, heuristic_, tiers_.fast_capacity_pages);

  MigrationDecision d;
  d.when_ns = now;
  d.rental_cost_ns = rental_cost_ns(prof, recs, cost_);
  d.purchase_cost_ns = purchase_cost_ns(prof, recs, cost_);
  d.migrate = d.rental_cost_ns > d.purchase_cost_ns;
  if (d.migrate) {
    auto [down, up] = enforce_tier_recs(prof, recs, &d.shortfall_pages);
    d.pages_down = down;
    d.pages_up = up;
    for (const Arena& a : arenas_.arenas())
      if (a.kind == ArenaKind::SiteShared && a.current_tier == Tier::Fast)
        d.fast_sites_after.push_back(a.site);
    std::sort(d.fast_sites_after.begin(), d.fast_sites_after.end());
  }
  return d;
}

MigrationDecision TieringEngine::online_step(Nanos now) {
  MigrationDecision d = maybe_migrate(now);
  profiler_.reweight(cost_.decay_factor);
  return d;
}

}  // namespace tiersim
