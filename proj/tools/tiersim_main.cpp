// tiersim CLI: workload generation, single runs, the offline two-pass
// flow, policy comparisons, and fast-tier capacity sweeps.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tiersim/config.hpp"
#include "tiersim/report.hpp"
#include "tiersim/sim.hpp"
#include "tiersim/workload.hpp"

namespace {

using namespace tiersim;

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> policy;
  std::optional<std::string> heuristic;
  std::optional<std::string> trace;
  std::optional<std::string> output_prefix;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> interval_ns;
  std::optional<std::uint64_t> sample_period;
  std::optional<std::uint64_t> fast_capacity_pages;
  std::optional<double> fast_capacity_pct;
  bool profile_reads_only = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--policy", f.policy,
                  "first-touch | offline | online | hw-cache");
  cmd->add_option("--heuristic", f.heuristic, "knapsack | hotset | thermos");
  cmd->add_option("--trace", f.trace, "trace file path");
  cmd->add_option("--output-prefix", f.output_prefix, "report file prefix");
  cmd->add_option("--seed", f.seed, "workload/config seed");
  cmd->add_option("--interval-ns", f.interval_ns, "decision interval (ns)");
  cmd->add_option("--sample-period", f.sample_period,
                  "access sampling period");
  cmd->add_option("--fast-capacity-pages", f.fast_capacity_pages,
                  "fast tier capacity in pages");
  cmd->add_option("--fast-capacity-pct", f.fast_capacity_pct,
                  "fast tier capacity as % of peak RSS");
  cmd->add_flag("--profile-reads-only", f.profile_reads_only,
                "attribute only reads in the profiler");
}

// Precedence: flag > config file > default.
FileConfig resolve_file_config(const CommonFlags& f) {
  FileConfig cfg;
  if (!f.config_path.empty())
    cfg = parse_config_json(read_text_file(f.config_path));
  if (f.policy) {
    auto p = policy_from_name(*f.policy);
    if (!p)
      throw ConfigError("unknown policy '" + *f.policy +
                        "' (valid: first-touch, offline, online, hw-cache)");
    cfg.policy = *p;
  }
  if (f.heuristic) {
    auto h = heuristic_from_name(*f.heuristic);
    if (!h)
      throw ConfigError("unknown heuristic '" + *f.heuristic +
                        "' (valid: knapsack, hotset, thermos)");
    cfg.heuristic = *h;
  }
  if (f.trace) cfg.trace_path = *f.trace;
  if (f.output_prefix) cfg.output_prefix = *f.output_prefix;
  if (f.seed) cfg.seed = *f.seed;
  if (f.interval_ns) cfg.cost.interval_ns = *f.interval_ns;
  if (f.sample_period) cfg.cost.sample_period = *f.sample_period;
  if (f.fast_capacity_pages) {
    cfg.tiers.fast_capacity_pages = *f.fast_capacity_pages;
    cfg.fast_capacity_pct.reset();
  }
  if (f.fast_capacity_pct) cfg.fast_capacity_pct = *f.fast_capacity_pct;
  if (f.profile_reads_only) cfg.profile_reads_only = true;
  return cfg;
}

TraceData load_configured_trace(const FileConfig& cfg) {
  if (cfg.trace_path.empty())
    throw ConfigError("no trace file given (set trace_path or --trace)");
  return load_trace_file(cfg.trace_path);
}

void resolve_pct_capacity(FileConfig& cfg, const TraceData& trace) {
  if (!cfg.fast_capacity_pct) return;
  const std::uint64_t peak = measure_peak_rss(trace, cfg.cost);
  cfg.tiers.fast_capacity_pages = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(static_cast<double>(peak) *
                                    *cfg.fast_capacity_pct / 100.0));
  cfg.fast_capacity_pct.reset();
}

void print_run_line(const RunResult& r) {
  std::printf(
      "[tiersim] policy=%s total_sim_ns=%llu fast_accesses=%llu "
      "slow_accesses=%llu peak_rss_pages=%llu pages_up=%llu pages_down=%llu\n",
      std::string(policy_name(r.policy)).c_str(),
      static_cast<unsigned long long>(r.total_sim_ns),
      static_cast<unsigned long long>(r.fast_accesses),
      static_cast<unsigned long long>(r.slow_accesses),
      static_cast<unsigned long long>(r.peak_rss_pages),
      static_cast<unsigned long long>(r.pages_migrated_up),
      static_cast<unsigned long long>(r.pages_migrated_down));
}

int cmd_run(const CommonFlags& flags) {
  FileConfig cfg = resolve_file_config(flags);
  const TraceData trace = load_configured_trace(cfg);
  resolve_pct_capacity(cfg, trace);
  const RunConfig run_cfg = to_run_config(cfg);

  if (run_cfg.policy == PolicyKind::OfflineGuided) {
    OfflinePair pair = run_offline_pair(run_cfg, trace);
    write_text_file(cfg.output_prefix + ".profile.json",
                    profile_to_json(pair.profile_run.final_profile));
    write_text_file(cfg.output_prefix + ".recs.json",
                    recommendation_to_json(pair.recommendation));
    write_reports(pair.profile_run, cfg.output_prefix + ".profile-pass");
    write_reports(pair.guided_run, cfg.output_prefix);
    print_run_line(pair.guided_run);
  } else {
    RunResult result = run_policy(run_cfg, trace);
    write_reports(result, cfg.output_prefix);
    print_run_line(result);
  }
  return 0;
}

int cmd_compare(const CommonFlags& flags,
                const std::vector<std::string>& policy_names) {
  FileConfig cfg = resolve_file_config(flags);
  const TraceData trace = load_configured_trace(cfg);
  resolve_pct_capacity(cfg, trace);

  std::vector<PolicyKind> policies;
  for (const std::string& name : policy_names) {
    auto p = policy_from_name(name);
    if (!p)
      throw ConfigError("unknown policy '" + name +
                        "' (valid: first-touch, offline, online, hw-cache)");
    policies.push_back(*p);
  }
  if (policies.empty()) throw ConfigError("compare: empty policy list");

  RunConfig all_fast = to_run_config(cfg);
  all_fast.policy = PolicyKind::FirstTouch;
  all_fast.tiers = {kUnboundedPages, kUnboundedPages};
  const Summary baseline = make_summary(run_policy(all_fast, trace));

  std::string csv = "policy,total_sim_ns,relative_throughput\n";
  for (PolicyKind policy : policies) {
    RunConfig rc = to_run_config(cfg);
    rc.policy = policy;
    Summary s = make_summary(run_policy(rc, trace));
    s.relative_throughput = compare(baseline, s);
    char row[160];
    std::snprintf(row, sizeof row, "%s,%llu,%.6f\n",
                  s.policy.c_str(),
                  static_cast<unsigned long long>(s.total_sim_ns),
                  *s.relative_throughput);
    csv += row;
    std::printf("[tiersim] %s total_sim_ns=%llu relative=%.4f\n",
                s.policy.c_str(),
                static_cast<unsigned long long>(s.total_sim_ns),
                *s.relative_throughput);
  }
  write_text_file(cfg.output_prefix + ".compare.csv", csv);
  return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::vector<double>& pcts,
              const std::vector<std::string>& policy_names) {
  FileConfig cfg = resolve_file_config(flags);
  const TraceData trace = load_configured_trace(cfg);

  std::vector<PolicyKind> policies;
  for (const std::string& name : policy_names) {
    auto p = policy_from_name(name);
    if (!p) throw ConfigError("unknown policy '" + name + "'");
    policies.push_back(*p);
  }
  if (pcts.empty()) throw ConfigError("sweep: empty percentage list");

  FileConfig base = cfg;
  base.fast_capacity_pct.reset();
  const std::vector<SweepRow> rows =
      run_sweep(to_run_config(base), trace, pcts, policies);
  write_text_file(cfg.output_prefix + ".sweep.csv", sweep_to_csv(rows));
  for (const SweepRow& r : rows)
    std::printf("[tiersim] %s pct=%g relative=%.4f\n", r.policy.c_str(),
                r.pct, r.relative_throughput);
  return 0;
}

int cmd_gen(const WorkloadSpec& spec, std::uint64_t seed,
            const std::string& out_path) {
  write_text_file(out_path, generate_workload(spec, seed));
  std::printf("[tiersim] wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiersim: two-tier memory placement simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "simulate one policy");
  add_common_flags(run, run_flags);

  CommonFlags offline_flags;
  CLI::App* offline =
      app.add_subcommand("offline", "profile pass + guided pass");
  add_common_flags(offline, offline_flags);

  CommonFlags compare_flags;
  std::vector<std::string> compare_policies{"first-touch", "offline",
                                            "online"};
  CLI::App* cmp = app.add_subcommand("compare", "run several policies");
  add_common_flags(cmp, compare_flags);
  cmp->add_option("--policies", compare_policies, "policies to compare");

  CommonFlags sweep_flags;
  std::vector<double> sweep_pcts{10, 20, 30, 40, 50};
  std::vector<std::string> sweep_policies{"first-touch", "offline", "online"};
  CLI::App* sweep =
      app.add_subcommand("sweep", "capacity sweep over % of peak RSS");
  add_common_flags(sweep, sweep_flags);
  sweep->add_option("--pcts", sweep_pcts, "fast capacities as % of peak RSS");
  sweep->add_option("--policies", sweep_policies, "policies to sweep");

  WorkloadSpec gen_spec;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "trace.txt";
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic workload");
  gen->add_option("--sites", gen_spec.sites, "allocation site count");
  gen->add_option("--objects-per-site", gen_spec.objects_per_site,
                  "objects allocated per site");
  gen->add_option("--min-bytes", gen_spec.object_bytes_min,
                  "min object size");
  gen->add_option("--max-bytes", gen_spec.object_bytes_max,
                  "max object size");
  gen->add_option("--skew", gen_spec.skew, "power-law hotness exponent");
  gen->add_option("--phases", gen_spec.phases, "hot-set phases");
  gen->add_option("--threads", gen_spec.threads, "allocating threads");
  gen->add_option("--accesses", gen_spec.accesses, "access event count");
  gen->add_option("--read-fraction", gen_spec.read_fraction,
                  "fraction of accesses that read");
  gen->add_option("--time-per-access-ns", gen_spec.time_per_access_ns,
                  "modeled compute time per access");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output trace path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (offline->parsed()) {
      offline_flags.policy = "offline";
      return cmd_run(offline_flags);
    }
    if (cmp->parsed()) return cmd_compare(compare_flags, compare_policies);
    if (sweep->parsed())
      return cmd_sweep(sweep_flags, sweep_pcts, sweep_policies);
    if (gen->parsed()) return cmd_gen(gen_spec, gen_seed, gen_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const TraceError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
