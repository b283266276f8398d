#include "tiersim/recommend.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace tiersim {
namespace {

// Density comparison by cross multiplication: value_a/weight_a vs
// value_b/weight_b with zero weights clamped to 1.
bool denser(const SiteItem& a, const SiteItem& b) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(a.value) *
                                (b.weight == 0 ? 1 : b.weight);
  const unsigned __int128 rhs = static_cast<unsigned __int128>(b.value) *
                                (a.weight == 0 ? 1 : a.weight);
  if (lhs != rhs) return lhs > rhs;
  if (a.value != b.value) return a.value > b.value;
  return a.site < b.site;
}

void drop_zero_value(std::vector<SiteItem>& items) {
  std::erase_if(items, [](const SiteItem& it) { return it.value == 0; });
}

}  // namespace

void sort_by_density(std::vector<SiteItem>& items) {
  std::sort(items.begin(), items.end(), denser);
}

std::vector<SiteId> TierRecommendation::fast_sites() const {
  std::vector<SiteId> out;
  for (const auto& [site, p] : sites)
    if (p.tier == Tier::Fast) out.push_back(site);
  return out;
}

std::vector<SiteId> knapsack_select(std::vector<SiteItem> items,
                                    std::uint64_t capacity_pages) {
  drop_zero_value(items);
  if (items.empty()) return {};

  std::uint64_t total_weight = 0;
  for (const SiteItem& it : items) total_weight += it.weight;
  if (capacity_pages >= total_weight) {
    std::vector<SiteId> all;
    for (const SiteItem& it : items) all.push_back(it.site);
    std::sort(all.begin(), all.end());
    return all;
  }

  // Bucket weights to 1 MB (256-page) units once the capacity is large
  // enough that a page-granular DP table would be wasteful. Weights round
  // up, capacity rounds down, so selections never overshoot the page
  // capacity.
  const std::uint64_t unit = capacity_pages > 65536 ? 256 : 1;
  const std::uint64_t cap_units_raw = capacity_pages / unit;

  std::sort(items.begin(), items.end(),
            [](const SiteItem& a, const SiteItem& b) { return a.site < b.site; });
  const std::size_t n = items.size();
  std::vector<std::uint64_t> w(n);
  std::uint64_t weight_units_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = (items[i].weight + unit - 1) / unit;
    weight_units_sum += w[i];
  }
  const std::uint64_t cap = std::min(cap_units_raw, weight_units_sum);

  // Suffix DP over items in ascending site order; on value ties prefer
  // taking the earlier item, which yields the lexicographically smallest
  // optimal set (all values are positive here).
  const std::size_t cols = static_cast<std::size_t>(cap) + 1;
  std::vector<std::uint64_t> next(cols, 0), cur(cols, 0);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(cols, false));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t best = next[c];
      bool chosen = false;
      if (w[i] <= c) {
        const std::uint64_t with = items[i].value + next[c - w[i]];
        if (with >= best) {
          best = with;
          chosen = true;
        }
      }
      cur[c] = best;
      take[i][c] = chosen;
    }
    std::swap(next, cur);
  }

  std::vector<SiteId> picked;
  std::size_t c = cols - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (take[i][c]) {
      picked.push_back(items[i].site);
      c -= static_cast<std::size_t>(w[i]);
    }
  }
  return picked;
}

std::vector<SiteId> hotset_select(std::vector<SiteItem> items,
                                  std::uint64_t capacity_pages) {
  drop_zero_value(items);
  sort_by_density(items);
  std::vector<SiteId> picked;
  std::uint64_t cumulative = 0;
  for (const SiteItem& it : items) {
    picked.push_back(it.site);
    cumulative += it.weight;
    if (cumulative > capacity_pages) break;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

TierRecommendation thermos_select(std::vector<SiteItem> items,
                                  std::uint64_t capacity_pages) {
  TierRecommendation recs;
  for (const SiteItem& it : items)
    recs.sites[it.site] = {Tier::Slow, 0};

  drop_zero_value(items);
  sort_by_density(items);
  std::uint64_t remaining = capacity_pages;
  for (const SiteItem& it : items) {
    if (it.weight <= remaining) {
      recs.sites[it.site] = {Tier::Fast, kAllPages};
      remaining -= it.weight;
    } else if (remaining > 0) {
      // Pro-rated value over the free pages beats the (empty) set of
      // sites it would displace, so take the remaining capacity.
      recs.sites[it.site] = {Tier::Fast, remaining};
      remaining = 0;
    }
  }
  return recs;
}

TierRecommendation recommend(const ProfileSnapshot& snapshot,
                             Heuristic heuristic,
                             std::uint64_t fast_capacity_pages) {
  std::uint64_t capacity = fast_capacity_pages;
  if (capacity != kUnboundedPages)
    capacity = capacity > snapshot.private_fast_pages
                   ? capacity - snapshot.private_fast_pages
                   : 0;

  std::vector<SiteItem> items;
  items.reserve(snapshot.sites.size());
  for (const SiteProfile& p : snapshot.sites)
    items.push_back({p.site, estimated_accesses(p, snapshot.sample_period),
                     p.resident_pages});

  if (heuristic == Heuristic::Thermos) {
    TierRecommendation recs = thermos_select(items, capacity);
    for (const SiteProfile& p : snapshot.sites)
      recs.sites.try_emplace(p.site, Placement{Tier::Slow, 0});
    return recs;
  }

  const std::vector<SiteId> selected =
      heuristic == Heuristic::Knapsack ? knapsack_select(items, capacity)
                                       : hotset_select(items, capacity);
  TierRecommendation recs;
  for (const SiteProfile& p : snapshot.sites)
    recs.sites[p.site] = {Tier::Slow, 0};
  for (SiteId site : selected) recs.sites[site] = {Tier::Fast, kAllPages};
  return recs;
}

std::string recommendation_to_json(const TierRecommendation& recs) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [site, p] : recs.sites) {
    nlohmann::ordered_json entry;
    entry["tier"] = tier_name(p.tier);
    if (p.granted_pages == kAllPages)
      entry["granted_pages"] = "all";
    else
      entry["granted_pages"] = p.granted_pages;
    obj[std::to_string(site)] = std::move(entry);
  }
  return obj.dump(2) + "\n";
}

TierRecommendation recommendation_from_json(const std::string& text) {
  TierRecommendation recs;
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid recommendation JSON: ") + e.what());
  }
  if (!obj.is_object())
    throw ConfigError("recommendation JSON must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const SiteId site = static_cast<SiteId>(std::stoul(it.key()));
    Placement p;
    auto tier = tier_from_name(it.value().at("tier").get<std::string>());
    if (!tier) throw ConfigError("recommendation JSON: unknown tier name");
    p.tier = *tier;
    const auto& granted = it.value().at("granted_pages");
    p.granted_pages = granted.is_string() ? kAllPages
                                          : granted.get<std::uint64_t>();
    recs.sites[site] = p;
  }
  return recs;
}

}  // namespace tiersim
