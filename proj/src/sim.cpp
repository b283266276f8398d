#include "tiersim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "tiersim/profiler.hpp"
#include "tiersim/report.hpp"
#include "tiersim/tiering.hpp"

namespace tiersim {
namespace {

// Internal execution mode; OfflineGuided splits into two passes.
enum class Mode { FirstTouch, OfflineProfile, OfflineApply, Online, HwCache };

ArenaStrategy strategy_for(Mode mode) {
  switch (mode) {
    case Mode::OfflineProfile: return ArenaStrategy::PerSite;
    case Mode::Online: return ArenaStrategy::Hybrid;
    case Mode::FirstTouch:
    case Mode::OfflineApply:
    case Mode::HwCache: return ArenaStrategy::PerThreadTier;
  }
  return ArenaStrategy::PerThreadTier;
}

PolicyKind policy_for(Mode mode) {
  switch (mode) {
    case Mode::FirstTouch: return PolicyKind::FirstTouch;
    case Mode::OfflineProfile:
    case Mode::OfflineApply: return PolicyKind::OfflineGuided;
    case Mode::Online: return PolicyKind::OnlineGuided;
    case Mode::HwCache: return PolicyKind::HwCache;
  }
  return PolicyKind::FirstTouch;
}

class Simulation {
 public:
  Simulation(const RunConfig& config, const TraceData& trace, Mode mode,
             const TierRecommendation* recs)
      : cfg_(config),
        trace_(trace),
        mode_(mode),
        recs_(recs),
        arenas_(strategy_for(mode), config.cost, config.tiers),
        profiler_(arenas_, config.cost, config.profile_reads_only) {
    if (mode_ == Mode::Online)
      engine_.emplace(arenas_, profiler_, cfg_.cost, cfg_.tiers,
                      cfg_.heuristic);
    if (mode_ == Mode::HwCache) {
      if (cfg_.tiers.fast_capacity_pages == kUnboundedPages ||
          cfg_.tiers.fast_capacity_pages == 0)
        throw ConfigError(
            "hw-cache policy requires a bounded, nonzero fast_capacity_pages");
      hw_.emplace(cfg_.tiers.fast_capacity_pages, cfg_.cost);
    }
    if (mode_ == Mode::OfflineApply && recs_) {
      for (const auto& [site, p] : recs_->sites)
        if (p.tier == Tier::Fast && p.granted_pages != kAllPages)
          grant_budget_[site] = p.granted_pages;
    }
  }

  RunResult run() {
    next_boundary_ = cfg_.cost.interval_ns;
    for (const TraceEvent& ev : trace_.events) {
      switch (ev.kind) {
        case EventKind::Time:
          clock_ += ev.delta_ns;
          break;
        case EventKind::Alloc:
          handle_alloc(ev);
          break;
        case EventKind::Free:
          arenas_.free_object(ev.object);
          break;
        case EventKind::Read:
        case EventKind::Write:
          handle_access(ev);
          break;
      }
      process_boundaries();
    }
    finish();
    return std::move(out_);
  }

 private:
  void handle_alloc(const TraceEvent& ev) {
    const std::uint64_t pages = cfg_.cost.pages_for_bytes(ev.bytes);
    const Tier placement = placement_for(ev.site, pages);
    arenas_.allocate({ev.site, 1}, ev.thread, ev.bytes, placement);
    out_.peak_rss_pages = std::max(out_.peak_rss_pages, arenas_.live_pages());
  }

  Tier placement_for(SiteId site, std::uint64_t pages) {
    switch (mode_) {
      case Mode::FirstTouch:
      case Mode::OfflineProfile:
      case Mode::Online:
        return arenas_.resolve_first_touch(pages);
      case Mode::HwCache:
        if (arenas_.free_pages(Tier::Slow) < pages)
          throw SimError("memory exhausted: slow tier full under hw-cache");
        return Tier::Slow;
      case Mode::OfflineApply:
        return guided_placement(site, pages);
    }
    return Tier::Slow;
  }

  // Recommended tier when capacity (and any partial grant budget)
  // permits; unknown sites and overflow fall back to first touch.
  Tier guided_placement(SiteId site, std::uint64_t pages) {
    const Placement* p = nullptr;
    if (recs_) {
      auto it = recs_->sites.find(site);
      if (it != recs_->sites.end()) p = &it->second;
    }
    if (!p) return arenas_.resolve_first_touch(pages);
    if (p->tier == Tier::Fast) {
      auto budget = grant_budget_.find(site);
      const bool budget_ok =
          budget == grant_budget_.end() || budget->second >= pages;
      if (budget_ok && arenas_.free_pages(Tier::Fast) >= pages) {
        if (budget != grant_budget_.end()) budget->second -= pages;
        return Tier::Fast;
      }
      if (arenas_.free_pages(Tier::Slow) >= pages) return Tier::Slow;
      return arenas_.resolve_first_touch(pages);
    }
    if (arenas_.free_pages(Tier::Slow) >= pages) return Tier::Slow;
    return arenas_.resolve_first_touch(pages);
  }

  void handle_access(const TraceEvent& ev) {
    const ObjectRecord& obj = arenas_.object(ev.object);
    const std::uint64_t page_index = ev.offset / cfg_.cost.page_bytes;
    bool fast;
    Nanos charge;
    if (mode_ == Mode::HwCache) {
      const auto r = hw_->access(obj.global_page_base + page_index);
      fast = r.hit;
      charge = r.charged_ns;
      ++(r.hit ? out_.hw_hits : out_.hw_misses);
    } else {
      fast = page_tier(obj, page_index) == Tier::Fast;
      charge = fast ? cfg_.cost.fast_read_ns : cfg_.cost.slow_read_ns;
    }
    clock_ += charge;
    ++(fast ? iv_fast_ : iv_slow_);
    ++(fast ? out_.fast_accesses : out_.slow_accesses);
    profiler_.record_access(obj, ev.kind == EventKind::Write);
  }

  void process_boundaries() {
    while (clock_ >= next_boundary_) {
      const Nanos at = next_boundary_;
      if (engine_) {
        MigrationDecision d = engine_->online_step(at);
        if (d.migrate) {
          const std::uint64_t moved = d.pages_up + d.pages_down;
          const Nanos charge = moved * cfg_.cost.ns_per_page_moved;
          clock_ += charge;
          out_.migration_ns += charge;
          out_.pages_migrated_up += d.pages_up;
          out_.pages_migrated_down += d.pages_down;
          iv_up_ += d.pages_up;
          iv_down_ += d.pages_down;
        }
        out_.decisions.push_back(std::move(d));
      }
      flush_interval(at);
      next_boundary_ += cfg_.cost.interval_ns;
    }
  }

  void flush_interval(Nanos end) {
    IntervalRecord r;
    r.interval_end_ns = end;
    r.fast_accesses = iv_fast_;
    r.slow_accesses = iv_slow_;
    r.bytes_migrated_up = iv_up_ * cfg_.cost.page_bytes;
    r.bytes_migrated_down = iv_down_ * cfg_.cost.page_bytes;
    const Nanos span = end - iv_start_;
    r.est_bandwidth_bytes_per_s =
        span == 0 ? 0.0
                  : 64.0 * static_cast<double>(iv_fast_ + iv_slow_) /
                        (static_cast<double>(span) / 1e9);
    out_.intervals.push_back(r);
    iv_fast_ = iv_slow_ = iv_up_ = iv_down_ = 0;
    iv_start_ = end;
  }

  void finish() {
    if (clock_ > iv_start_ || iv_fast_ + iv_slow_ + iv_up_ + iv_down_ > 0)
      flush_interval(clock_);
    out_.policy = policy_for(mode_);
    out_.total_sim_ns = clock_;
    out_.trace_hash = trace_.hash;
    out_.page_bytes = cfg_.cost.page_bytes;
    out_.final_profile = profiler_.snapshot(clock_);
    if (mode_ == Mode::OfflineApply && recs_) {
      for (const auto& [site, p] : recs_->sites)
        out_.final_site_tiers[site] = p.tier;
    } else {
      for (const Arena& a : arenas_.arenas())
        if (a.kind == ArenaKind::SiteShared)
          out_.final_site_tiers[a.site] = a.current_tier;
    }
  }

  RunConfig cfg_;
  const TraceData& trace_;
  Mode mode_;
  const TierRecommendation* recs_;
  ArenaManager arenas_;
  Profiler profiler_;
  std::optional<TieringEngine> engine_;
  std::optional<HwDirectMappedCache> hw_;
  std::map<SiteId, std::uint64_t> grant_budget_;

  Nanos clock_ = 0;
  Nanos next_boundary_ = 0;
  Nanos iv_start_ = 0;
  std::uint64_t iv_fast_ = 0, iv_slow_ = 0, iv_up_ = 0, iv_down_ = 0;
  RunResult out_;
};

}  // namespace

TraceData load_trace(const std::string& text) {
  return {parse_trace(text), trace_hash(text)};
}

TraceData load_trace_file(const std::string& path) {
  return load_trace(read_text_file(path));
}

HwDirectMappedCache::HwDirectMappedCache(std::uint64_t frames,
                                         const CostModel& cost)
    : frames_(frames), cost_(cost) {
  if (frames_ == 0) throw ConfigError("hw cache needs at least one frame");
}

HwDirectMappedCache::Access HwDirectMappedCache::access(
    std::uint64_t global_page) {
  const std::uint64_t frame = global_page % frames_;
  auto it = frame_to_page_.find(frame);
  if (it != frame_to_page_.end() && it->second == global_page)
    return {true, cost_.fast_read_ns};
  frame_to_page_[frame] = global_page;
  return {false, cost_.slow_read_ns + cost_.hw_page_fill_ns};
}

RunResult run_policy(const RunConfig& config, const TraceData& trace) {
  if (auto err = validate_config(config.cost, config.tiers))
    throw ConfigError(*err);
  switch (config.policy) {
    case PolicyKind::FirstTouch:
      return Simulation(config, trace, Mode::FirstTouch, nullptr).run();
    case PolicyKind::OnlineGuided:
      return Simulation(config, trace, Mode::Online, nullptr).run();
    case PolicyKind::HwCache:
      return Simulation(config, trace, Mode::HwCache, nullptr).run();
    case PolicyKind::OfflineGuided:
      return run_offline_pair(config, trace).guided_run;
  }
  throw ConfigError("unknown policy");
}

OfflinePair run_offline_pair(const RunConfig& config, const TraceData& trace) {
  if (auto err = validate_config(config.cost, config.tiers))
    throw ConfigError(*err);
  OfflinePair pair;
  pair.profile_run =
      Simulation(config, trace, Mode::OfflineProfile, nullptr).run();
  pair.recommendation =
      recommend(pair.profile_run.final_profile, config.heuristic,
                config.tiers.fast_capacity_pages);
  pair.guided_run =
      Simulation(config, trace, Mode::OfflineApply, &pair.recommendation)
          .run();
  return pair;
}

std::uint64_t measure_peak_rss(const TraceData& trace, const CostModel& cost) {
  RunConfig probe;
  probe.cost = cost;
  probe.tiers = {kUnboundedPages, kUnboundedPages};
  probe.policy = PolicyKind::FirstTouch;
  return run_policy(probe, trace).peak_rss_pages;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const TraceData& trace,
                                const std::vector<double>& pcts,
                                const std::vector<PolicyKind>& policies) {
  if (pcts.empty()) throw ConfigError("sweep: empty percentage list");
  if (policies.empty()) throw ConfigError("sweep: empty policy list");

  const std::uint64_t peak = measure_peak_rss(trace, base.cost);

  RunConfig all_fast = base;
  all_fast.policy = PolicyKind::FirstTouch;
  all_fast.tiers = {kUnboundedPages, kUnboundedPages};
  const Summary baseline = make_summary(run_policy(all_fast, trace));

  std::vector<SweepRow> rows;
  for (PolicyKind policy : policies) {
    for (double pct : pcts) {
      if (!(pct > 0))
        throw ConfigError("sweep: percentages must be positive");
      RunConfig cfg = base;
      cfg.policy = policy;
      cfg.tiers.fast_capacity_pages = std::max<std::uint64_t>(
          1, static_cast<std::uint64_t>(
                 static_cast<double>(peak) * pct / 100.0));
      const Summary candidate = make_summary(run_policy(cfg, trace));
      rows.push_back(
          {std::string(policy_name(policy)), pct, compare(baseline, candidate)});
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "policy,pct,relative_throughput\n";
  for (const SweepRow& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.relative_throughput);
    out << r.policy << ',' << r.pct << ',' << buf << "\n";
  }
  return out.str();
}

}  // namespace tiersim
