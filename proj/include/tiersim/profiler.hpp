// Deterministic emulation of sampled LLC-miss profiling. Accesses to
// shared (site-keyed) arenas are stride-sampled and accumulated per site;
// thread-private arenas are never attributed.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tiersim/arena.hpp"
#include "tiersim/types.hpp"

namespace tiersim {

struct SiteProfile {
  SiteId site = 0;
  Tier current_tier = Tier::Fast;
  std::uint64_t access_samples = 0;
  std::uint64_t resident_pages = 0;
};

/// Scales sample counts back to an access estimate.
inline std::uint64_t estimated_accesses(const SiteProfile& p,
                                        std::uint64_t sample_period) {
  return p.access_samples * sample_period;
}

struct ProfileSnapshot {
  std::vector<SiteProfile> sites;  // sorted by site id
  std::uint64_t sample_period = 512;
  Nanos snapshot_time = 0;
  // Fast-tier pages pinned by thread-private arenas at snapshot time;
  // the recommender reserves these off the fast capacity.
  std::uint64_t private_fast_pages = 0;

  const SiteProfile* find(SiteId site) const;
};

class Profiler {
 public:
  /// `reads_only` restricts attribution to reads, mirroring profilers
  /// that sample load misses only. Both kinds advance the counters.
  Profiler(const ArenaManager& arenas, const CostModel& cost,
           bool reads_only = false);

  /// Counts one access. Returns true when the access was sampled and
  /// attributed to the owning site (shared arenas only; every
  /// sample_period-th access of a site is attributed).
  bool record_access(const ObjectRecord& obj, bool is_write);

  /// Consistent copy of all shared-arena site profiles. Mutates nothing.
  ProfileSnapshot snapshot(Nanos now) const;

  /// Scales every site's samples by `factor` (floor). Identity at 1.
  void reweight(double factor);

  std::uint64_t total_accesses() const { return total_accesses_; }
  std::uint64_t site_samples(SiteId site) const;

 private:
  struct SiteCounter {
    std::uint64_t accesses = 0;  // shared-arena accesses of this site
    std::uint64_t samples = 0;
  };

  const ArenaManager& arenas_;
  std::uint64_t period_;
  bool reads_only_;
  std::uint64_t total_accesses_ = 0;
  std::map<SiteId, SiteCounter> per_site_;
};

/// Interchange format: a JSON array of {site, tier, samples, pages}.
std::string profile_to_json(const ProfileSnapshot& snapshot);
ProfileSnapshot profile_from_json(const std::string& text);

}  // namespace tiersim
