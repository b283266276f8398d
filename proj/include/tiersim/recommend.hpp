// Converts site profiles into per-site tier recommendations. Three
// heuristics: an exact 0/1 knapsack over bucketed weights, the
// density-sorted hotset (soft capacity, over-provisions by design), and
// thermos (density-sorted, never over-provisions, may grant a large hot
// site part of the remaining capacity).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tiersim/profiler.hpp"
#include "tiersim/types.hpp"

namespace tiersim {

/// One allocation site viewed as a packing item: value is the estimated
/// access count (bandwidth proxy), weight its resident pages (capacity).
struct SiteItem {
  SiteId site = 0;
  std::uint64_t value = 0;
  std::uint64_t weight = 0;
};

/// Bandwidth per unit capacity; zero-weight sites count as one page.
inline double density(const SiteItem& item) {
  return static_cast<double>(item.value) /
         static_cast<double>(item.weight == 0 ? 1 : item.weight);
}

/// Grant sentinel: the whole site is placed on the recommended tier.
inline constexpr std::uint64_t kAllPages = kUnboundedPages;

struct Placement {
  Tier tier = Tier::Slow;
  std::uint64_t granted_pages = 0;  // kAllPages for full grants
};

struct TierRecommendation {
  std::map<SiteId, Placement> sites;

  Tier tier_for(SiteId site) const {
    auto it = sites.find(site);
    return it == sites.end() ? Tier::Slow : it->second.tier;
  }
  std::uint64_t granted_for(SiteId site) const {
    auto it = sites.find(site);
    return it == sites.end() ? 0 : it->second.granted_pages;
  }
  std::vector<SiteId> fast_sites() const;
};

/// Exact 0/1 knapsack: maximizes total value within `capacity_pages`.
/// Deterministic: among optima, returns the lexicographically smallest
/// site-id set. Weights are bucketed for large capacities (see impl).
std::vector<SiteId> knapsack_select(std::vector<SiteItem> items,
                                    std::uint64_t capacity_pages);

/// Adds items in density order and stops after the first item that takes
/// the cumulative weight past the capacity (that item is included).
std::vector<SiteId> hotset_select(std::vector<SiteItem> items,
                                  std::uint64_t capacity_pages);

/// Density order, exact capacity: items are admitted fully while they
/// fit; an item larger than the remaining capacity R is admitted for R
/// pages when its pro-rated value beats the value it would displace
/// (nothing, when only free capacity is used), otherwise skipped.
TierRecommendation thermos_select(std::vector<SiteItem> items,
                                  std::uint64_t capacity_pages);

/// Builds items from the snapshot (value = samples x period, weight =
/// resident pages), reserves private-arena fast pages off the capacity,
/// and dispatches. Zero-sample sites are always recommended slow.
TierRecommendation recommend(const ProfileSnapshot& snapshot,
                             Heuristic heuristic,
                             std::uint64_t fast_capacity_pages);

/// Orders items by density descending; ties by value, then site id.
/// Exact comparison (no floating point).
void sort_by_density(std::vector<SiteItem>& items);

std::string recommendation_to_json(const TierRecommendation& recs);
TierRecommendation recommendation_from_json(const std::string& text);

}  // namespace tiersim
