#include "tiersim/profiler.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace tiersim {

const SiteProfile* ProfileSnapshot::find(SiteId site) const {
  auto it = std::lower_bound(
      sites.begin(), sites.end(), site,
      [](const SiteProfile& p, SiteId s) { return p.site < s; });
  if (it == sites.end() || it->site != site) return nullptr;
  return &*it;
}

Profiler::Profiler(const ArenaManager& arenas, const CostModel& cost,
                   bool reads_only)
    : arenas_(arenas), period_(cost.sample_period), reads_only_(reads_only) {}

bool Profiler::record_access(const ObjectRecord& obj, bool is_write) {
  ++total_accesses_;
  if (reads_only_ && is_write) return false;
  if (arenas_.arena(obj.arena).kind != ArenaKind::SiteShared) return false;
  SiteCounter& c = per_site_[obj.site];
  ++c.accesses;
  if (c.accesses % period_ == 0) {
    ++c.samples;
    return true;
  }
  return false;
}

ProfileSnapshot Profiler::snapshot(Nanos now) const {
  ProfileSnapshot snap;
  snap.sample_period = period_;
  snap.snapshot_time = now;
  snap.private_fast_pages = arenas_.private_fast_pages();
  for (const Arena& a : arenas_.arenas()) {
    if (a.kind != ArenaKind::SiteShared) continue;
    SiteProfile p;
    p.site = a.site;
    p.current_tier = a.current_tier;
    auto it = per_site_.find(a.site);
    p.access_samples = it == per_site_.end() ? 0 : it->second.samples;
    p.resident_pages = a.resident_pages_fast + a.resident_pages_slow;
    snap.sites.push_back(p);
  }
  std::sort(snap.sites.begin(), snap.sites.end(),
            [](const SiteProfile& a, const SiteProfile& b) {
              return a.site < b.site;
            });
  return snap;
}

void Profiler::reweight(double factor) {
  if (!(factor >= 0.0 && factor <= 1.0))
    throw SimError("reweight factor must be in [0, 1]");
  if (factor == 1.0) return;
  for (auto& [site, c] : per_site_)
    c.samples = static_cast<std::uint64_t>(
        std::floor(static_cast<double>(c.samples) * factor));
}

std::uint64_t Profiler::site_samples(SiteId site) const {
  auto it = per_site_.find(site);
  return it == per_site_.end() ? 0 : it->second.samples;
}

std::string profile_to_json(const ProfileSnapshot& snapshot) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SiteProfile& p : snapshot.sites) {
    nlohmann::ordered_json entry;
    entry["site"] = p.site;
    entry["tier"] = tier_name(p.current_tier);
    entry["samples"] = p.access_samples;
    entry["pages"] = p.resident_pages;
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

ProfileSnapshot profile_from_json(const std::string& text) {
  ProfileSnapshot snap;
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid profile JSON: ") + e.what());
  }
  if (!arr.is_array()) throw ConfigError("profile JSON must be an array");
  for (const auto& entry : arr) {
    SiteProfile p;
    p.site = entry.at("site").get<SiteId>();
    auto tier = tier_from_name(entry.at("tier").get<std::string>());
    if (!tier) throw ConfigError("profile JSON: unknown tier name");
    p.current_tier = *tier;
    p.access_samples = entry.at("samples").get<std::uint64_t>();
    p.resident_pages = entry.at("pages").get<std::uint64_t>();
    snap.sites.push_back(p);
  }
  std::sort(snap.sites.begin(), snap.sites.end(),
            [](const SiteProfile& a, const SiteProfile& b) {
              return a.site < b.site;
            });
  return snap;
}

}  // namespace tiersim
