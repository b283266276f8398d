#include "tiersim/config.hpp"

#include <set>

#include "json.hpp"

namespace tiersim {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& known,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

std::uint64_t get_u64(const json& v, const std::string& key) {
  if (!v.is_number_unsigned())
    throw ConfigError("'" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t get_pages(const json& v, const std::string& key) {
  if (v.is_string()) {
    if (v.get<std::string>() == "unbounded") return kUnboundedPages;
    throw ConfigError("'" + key + "' must be a page count or \"unbounded\"");
  }
  return get_u64(v, key);
}

void parse_cost_model(const json& j, CostModel& cost) {
  check_keys(j,
             {"extra_ns_per_slower_access", "ns_per_page_moved",
              "fast_read_ns", "slow_read_ns", "hw_page_fill_ns", "page_bytes",
              "sample_period", "interval_ns", "promotion_threshold_bytes",
              "decay_factor"},
             "cost_model");
  bool slow_set = false;
  if (j.contains("extra_ns_per_slower_access"))
    cost.extra_ns_per_slower_access =
        get_u64(j["extra_ns_per_slower_access"], "extra_ns_per_slower_access");
  if (j.contains("ns_per_page_moved"))
    cost.ns_per_page_moved = get_u64(j["ns_per_page_moved"], "ns_per_page_moved");
  if (j.contains("fast_read_ns"))
    cost.fast_read_ns = get_u64(j["fast_read_ns"], "fast_read_ns");
  if (j.contains("slow_read_ns")) {
    cost.slow_read_ns = get_u64(j["slow_read_ns"], "slow_read_ns");
    slow_set = true;
  }
  if (j.contains("hw_page_fill_ns"))
    cost.hw_page_fill_ns = get_u64(j["hw_page_fill_ns"], "hw_page_fill_ns");
  if (j.contains("page_bytes"))
    cost.page_bytes = get_u64(j["page_bytes"], "page_bytes");
  if (j.contains("sample_period"))
    cost.sample_period = get_u64(j["sample_period"], "sample_period");
  if (j.contains("interval_ns"))
    cost.interval_ns = get_u64(j["interval_ns"], "interval_ns");
  if (j.contains("promotion_threshold_bytes"))
    cost.promotion_threshold_bytes =
        get_u64(j["promotion_threshold_bytes"], "promotion_threshold_bytes");
  if (j.contains("decay_factor")) {
    if (!j["decay_factor"].is_number())
      throw ConfigError("'decay_factor' must be a number");
    cost.decay_factor = j["decay_factor"].get<double>();
  }
  // Unless pinned explicitly, the slow read latency tracks the fast
  // latency plus the per-access penalty.
  if (!slow_set)
    cost.slow_read_ns = cost.fast_read_ns + cost.extra_ns_per_slower_access;
}

}  // namespace

FileConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(root,
             {"cost_model", "tier_config", "policy", "heuristic", "seed",
              "trace_path", "output_prefix"},
             "config");

  FileConfig cfg;
  if (root.contains("cost_model")) {
    if (!root["cost_model"].is_object())
      throw ConfigError("'cost_model' must be an object");
    parse_cost_model(root["cost_model"], cfg.cost);
  }
  if (root.contains("tier_config")) {
    const json& t = root["tier_config"];
    if (!t.is_object()) throw ConfigError("'tier_config' must be an object");
    check_keys(t,
               {"fast_capacity_pages", "fast_capacity_pct",
                "slow_capacity_pages"},
               "tier_config");
    if (t.contains("fast_capacity_pages") && t.contains("fast_capacity_pct"))
      throw ConfigError(
          "tier_config: fast_capacity_pages and fast_capacity_pct are "
          "mutually exclusive");
    if (t.contains("fast_capacity_pages"))
      cfg.tiers.fast_capacity_pages =
          get_pages(t["fast_capacity_pages"], "fast_capacity_pages");
    if (t.contains("fast_capacity_pct")) {
      if (!t["fast_capacity_pct"].is_number())
        throw ConfigError("'fast_capacity_pct' must be a number");
      cfg.fast_capacity_pct = t["fast_capacity_pct"].get<double>();
      if (!(*cfg.fast_capacity_pct > 0))
        throw ConfigError("'fast_capacity_pct' must be positive");
    }
    if (t.contains("slow_capacity_pages"))
      cfg.tiers.slow_capacity_pages =
          get_pages(t["slow_capacity_pages"], "slow_capacity_pages");
  }
  if (root.contains("policy")) {
    if (!root["policy"].is_string())
      throw ConfigError("'policy' must be a string");
    auto p = policy_from_name(root["policy"].get<std::string>());
    if (!p)
      throw ConfigError("unknown policy '" +
                        root["policy"].get<std::string>() +
                        "' (valid: first-touch, offline, online, hw-cache)");
    cfg.policy = *p;
  }
  if (root.contains("heuristic")) {
    if (!root["heuristic"].is_string())
      throw ConfigError("'heuristic' must be a string");
    auto h = heuristic_from_name(root["heuristic"].get<std::string>());
    if (!h)
      throw ConfigError("unknown heuristic '" +
                        root["heuristic"].get<std::string>() +
                        "' (valid: knapsack, hotset, thermos)");
    cfg.heuristic = *h;
  }
  if (root.contains("seed")) cfg.seed = get_u64(root["seed"], "seed");
  if (root.contains("trace_path")) {
    if (!root["trace_path"].is_string())
      throw ConfigError("'trace_path' must be a string");
    cfg.trace_path = root["trace_path"].get<std::string>();
  }
  if (root.contains("output_prefix")) {
    if (!root["output_prefix"].is_string())
      throw ConfigError("'output_prefix' must be a string");
    cfg.output_prefix = root["output_prefix"].get<std::string>();
  }
  return cfg;
}

RunConfig to_run_config(const FileConfig& config) {
  if (config.fast_capacity_pct)
    throw ConfigError(
        "fast_capacity_pct must be resolved to pages before running");
  if (auto err = validate_config(config.cost, config.tiers))
    throw ConfigError(*err);
  RunConfig run;
  run.cost = config.cost;
  run.tiers = config.tiers;
  run.policy = config.policy;
  run.heuristic = config.heuristic;
  run.seed = config.seed;
  run.profile_reads_only = config.profile_reads_only;
  return run;
}

}  // namespace tiersim
